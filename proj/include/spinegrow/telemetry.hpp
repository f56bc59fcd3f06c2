/*
  Copyright 2026 The spinegrow Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spinegrow {

enum class RecordKind { spike, pulse, connection, kinematics, forced_input };

std::string_view to_string(RecordKind k);
/// Throws ParseError (line 0) for an unknown name.
RecordKind record_kind_from(std::string_view name);

/// One row of the run log. Absent fields are written as empty cells.
struct Record {
  double time_ms = 0.0;
  RecordKind kind = RecordKind::spike;
  std::optional<std::int64_t> neuron_id;
  std::optional<std::int64_t> agent_id;
  std::optional<double> x, y, vx, vy, ax, ay;
  std::optional<std::int64_t> target_id;
  std::optional<double> value;

  friend bool operator==(const Record&, const Record&) = default;
};

inline constexpr std::string_view kLogHeader =
    "time_ms,kind,neuron_id,agent_id,x,y,vx,vy,ax,ay,target_id,value";

/// Shortest round-trip representation of every double.
std::string format_record(const Record& r);
Record parse_record(std::string_view line, std::size_t line_no = 0);

void write_log(std::ostream& os, std::span<const Record> records);
void write_log(const std::filesystem::path& path, std::span<const Record> records);
std::vector<Record> read_log(std::istream& is);
std::vector<Record> read_log(const std::filesystem::path& path);

std::vector<double> spike_times(std::span<const Record> records, std::int64_t neuron);

struct Histogram1D {
  double bin_width = 0.0;
  double lo = 0.0;  ///< left edge of bin 0
  std::vector<std::size_t> counts;
  std::vector<double> density;  ///< counts / (n * bin_width)
  std::size_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  double mode = 0.0;  ///< centre of the fullest bin
};

/// Histogram of the given samples, bins [lo + i w, lo + (i+1) w) starting at
/// floor(min / w) * w. Throws EmptyDataError when `samples` is empty.
Histogram1D histogram_1d(std::span<const double> samples, double bin_width);

/// Inter-spike intervals of a spike train.
std::vector<double> inter_spike_intervals(std::span<const double> spike_times);

/// Normalized histogram of inter-spike intervals. Needs at least two spikes.
Histogram1D firing_histogram_1d(std::span<const double> spike_times, double bin_width = 10.0);

struct Histogram2D {
  double bin_width = 0.0;
  double range = 0.0;
  std::size_t bins = 0;
  std::vector<std::size_t> counts;  ///< row-major [i1 * bins + i2]
  std::size_t paired = 0;           ///< output spikes with both inputs preceding
  std::size_t dropped = 0;          ///< output spikes lacking a preceding input
  std::size_t outside = 0;          ///< paired but beyond `range`
  std::size_t modal_i1 = 0, modal_i2 = 0;
  double mean1 = 0.0, mean2 = 0.0;
  /// Trace of the covariance of (dt1, dt2) over every paired spike.
  double dispersion = 0.0;
  std::vector<std::pair<double, double>> pairs;

  std::size_t at(std::size_t i1, std::size_t i2) const { return counts[i1 * bins + i2]; }
  double modal_dt1() const { return (static_cast<double>(modal_i1) + 0.5) * bin_width; }
  double modal_dt2() const { return (static_cast<double>(modal_i2) + 0.5) * bin_width; }
};

/// For each output spike t: dt1 = t - latest in1 spike <= t, likewise dt2.
/// Spikes without both predecessors are dropped; throws EmptyDataError
/// when nothing is paired.
Histogram2D correlation_histogram_2d(std::span<const double> out, std::span<const double> in1,
                                     std::span<const double> in2, double bin_width = 5.0,
                                     double range = 250.0);

/// Fraction of paired spikes with dt1 or dt2 within `tol` of a positive
/// multiple of `period`.
double period_offset_mass(const Histogram2D& h, double period, double tol);

struct Edge {
  std::int64_t from = 0;  ///< neuron whose cone connected
  std::int64_t to = 0;    ///< neuron that was reached
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// What counts as success for a scenario: either a list of directed edges,
/// or one signal path from every input to the output. Signals travel
/// against the edge direction, from `to` into `from`.
struct IntendedTopology {
  std::vector<Edge> edges;
  bool reachability = false;
  std::vector<std::int64_t> inputs;
  std::int64_t output = 0;
};

std::vector<Edge> edges_from_records(std::span<const Record> records);

/// Realized fraction of intended edges; 1/0 for the reachability form.
double success_rate(std::span<const Edge> realized, const IntendedTopology& intended);

/// True when a signal can flow from `src` to `dst` along realized edges.
bool signal_path_exists(std::span<const Edge> realized, std::int64_t src, std::int64_t dst);

struct KinematicsSample {
  double time_ms = 0.0;
  double vx = 0.0, vy = 0.0, ax = 0.0, ay = 0.0;
};

/// Centered moving average over `window` samples, truncated at the ends.
std::vector<double> moving_average(std::span<const double> v, std::size_t window);

/// Velocity/acceleration series of one cone, optionally smoothed.
/// Throws LookupError when the agent has no kinematics records.
std::vector<KinematicsSample> kinematics_trace(std::span<const Record> records,
                                               std::int64_t agent_id,
                                               std::size_t smoothing_window = 1);

void write_hist1d_csv(const std::filesystem::path& path, const Histogram1D& h);
void write_hist2d_csv(const std::filesystem::path& path, const Histogram2D& h);
void write_trace_csv(const std::filesystem::path& path, std::span<const KinematicsSample> s);
/// Two-column `stat,value` file.
void write_stats_csv(const std::filesystem::path& path,
                     std::span<const std::pair<std::string, double>> stats);

}  // namespace spinegrow
