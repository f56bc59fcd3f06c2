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

#include "spinegrow/telemetry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <set>

#include "spinegrow/errors.hpp"

namespace spinegrow {
namespace {

constexpr std::size_t kColumns = 12;

void put(std::string& out, double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, p);
}

void put(std::string& out, std::int64_t v) {
  char buf[24];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, p);
}

template <class T>
void put(std::string& out, const std::optional<T>& v) {
  if (v) put(out, *v);
}

template <class T>
std::optional<T> take(std::string_view cell, std::size_t line, const char* column) {
  if (cell.empty()) return std::nullopt;
  T v{};
  auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || p != cell.data() + cell.size())
    throw ParseError(std::string("bad value '") + std::string(cell) + "' in column " + column,
                     line);
  return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path.string());
  return os;
}

void finish(std::ofstream& os, const std::filesystem::path& path) {
  os.flush();
  if (!os) throw IoError("write failed for " + path.string());
}

}  // namespace

std::string_view to_string(RecordKind k) {
  switch (k) {
    case RecordKind::spike: return "spike";
    case RecordKind::pulse: return "pulse";
    case RecordKind::connection: return "connection";
    case RecordKind::kinematics: return "kinematics";
    case RecordKind::forced_input: return "forced_input";
  }
  return "unknown";
}

RecordKind record_kind_from(std::string_view name) {
  for (auto k : {RecordKind::spike, RecordKind::pulse, RecordKind::connection,
                 RecordKind::kinematics, RecordKind::forced_input})
    if (to_string(k) == name) return k;
  throw ParseError("unknown record kind '" + std::string(name) + "'", 0);
}

std::string format_record(const Record& r) {
  std::string s;
  s.reserve(96);
  put(s, r.time_ms);
  s += ',';
  s += to_string(r.kind);
  s += ',';
  put(s, r.neuron_id);
  s += ',';
  put(s, r.agent_id);
  for (const auto* f : {&r.x, &r.y, &r.vx, &r.vy, &r.ax, &r.ay}) {
    s += ',';
    put(s, *f);
  }
  s += ',';
  put(s, r.target_id);
  s += ',';
  put(s, r.value);
  return s;
}

Record parse_record(std::string_view line, std::size_t line_no) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::string_view cells[kColumns];
  std::size_t n = 0;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    if (n == kColumns) throw ParseError("too many columns", line_no);
    cells[n++] = line.substr(start, comma == std::string_view::npos ? comma : comma - start);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (n != kColumns)
    throw ParseError("expected 12 columns, got " + std::to_string(n), line_no);
  Record r;
  auto t = take<double>(cells[0], line_no, "time_ms");
  if (!t) throw ParseError("missing time_ms", line_no);
  r.time_ms = *t;
  try {
    r.kind = record_kind_from(cells[1]);
  } catch (const ParseError& e) {
    throw ParseError("unknown record kind '" + std::string(cells[1]) + "'", line_no);
  }
  r.neuron_id = take<std::int64_t>(cells[2], line_no, "neuron_id");
  r.agent_id = take<std::int64_t>(cells[3], line_no, "agent_id");
  r.x = take<double>(cells[4], line_no, "x");
  r.y = take<double>(cells[5], line_no, "y");
  r.vx = take<double>(cells[6], line_no, "vx");
  r.vy = take<double>(cells[7], line_no, "vy");
  r.ax = take<double>(cells[8], line_no, "ax");
  r.ay = take<double>(cells[9], line_no, "ay");
  r.target_id = take<std::int64_t>(cells[10], line_no, "target_id");
  r.value = take<double>(cells[11], line_no, "value");
  return r;
}

void write_log(std::ostream& os, std::span<const Record> records) {
  os << kLogHeader << '\n';
  for (const Record& r : records) os << format_record(r) << '\n';
}

void write_log(const std::filesystem::path& path, std::span<const Record> records) {
  auto os = open_out(path);
  write_log(os, records);
  finish(os, path);
}

std::vector<Record> read_log(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("missing header", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kLogHeader) throw ParseError("unexpected header '" + line + "'", 1);
  std::vector<Record> out;
  std::size_t no = 1;
  while (std::getline(is, line)) {
    ++no;
    if (line.empty()) continue;
    out.push_back(parse_record(line, no));
  }
  return out;
}

std::vector<Record> read_log(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read " + path.string());
  return read_log(is);
}

std::vector<double> spike_times(std::span<const Record> records, std::int64_t neuron) {
  std::vector<double> t;
  for (const Record& r : records)
    if (r.kind == RecordKind::spike && r.neuron_id == neuron) t.push_back(r.time_ms);
  return t;
}

Histogram1D histogram_1d(std::span<const double> samples, double bin_width) {
  if (samples.empty()) throw EmptyDataError("histogram of an empty sample");
  if (!(bin_width > 0)) throw DomainError("bin width must be positive");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  Histogram1D h;
  h.bin_width = bin_width;
  h.n = s.size();
  h.lo = std::floor(s.front() / bin_width) * bin_width;
  const auto bins = static_cast<std::size_t>(std::floor((s.back() - h.lo) / bin_width)) + 1;
  h.counts.assign(bins, 0);
  double sum = 0;
  for (double v : s) {
    auto i = static_cast<std::size_t>(std::floor((v - h.lo) / bin_width));
    h.counts[std::min(i, bins - 1)]++;
    sum += v;
  }
  h.mean = sum / static_cast<double>(h.n);
  const std::size_t mid = h.n / 2;
  h.median = h.n % 2 ? s[mid] : 0.5 * (s[mid - 1] + s[mid]);
  h.density.resize(bins);
  for (std::size_t i = 0; i < bins; ++i)
    h.density[i] = static_cast<double>(h.counts[i]) / (static_cast<double>(h.n) * bin_width);
  auto top = std::max_element(h.counts.begin(), h.counts.end()) - h.counts.begin();
  h.mode = h.lo + (static_cast<double>(top) + 0.5) * bin_width;
  return h;
}

std::vector<double> inter_spike_intervals(std::span<const double> spike_times) {
  std::vector<double> isi;
  for (std::size_t i = 1; i < spike_times.size(); ++i)
    isi.push_back(spike_times[i] - spike_times[i - 1]);
  return isi;
}

Histogram1D firing_histogram_1d(std::span<const double> spike_times, double bin_width) {
  auto isi = inter_spike_intervals(spike_times);
  if (isi.empty()) throw EmptyDataError("need at least two spikes for an interval histogram");
  return histogram_1d(isi, bin_width);
}

Histogram2D correlation_histogram_2d(std::span<const double> out, std::span<const double> in1,
                                     std::span<const double> in2, double bin_width,
                                     double range) {
  if (!(bin_width > 0) || !(range > 0)) throw DomainError("bin width and range must be positive");
  std::vector<double> a(in1.begin(), in1.end()), b(in2.begin(), in2.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  Histogram2D h;
  h.bin_width = bin_width;
  h.range = range;
  h.bins = static_cast<std::size_t>(std::ceil(range / bin_width));
  h.counts.assign(h.bins * h.bins, 0);
  auto latest = [](const std::vector<double>& v, double t) -> std::optional<double> {
    auto it = std::upper_bound(v.begin(), v.end(), t);
    if (it == v.begin()) return std::nullopt;
    return *std::prev(it);
  };
  for (double t : out) {
    auto p1 = latest(a, t), p2 = latest(b, t);
    if (!p1 || !p2) {
      ++h.dropped;
      continue;
    }
    const double d1 = t - *p1, d2 = t - *p2;
    h.pairs.emplace_back(d1, d2);
    ++h.paired;
    if (d1 < range && d2 < range) {
      auto i1 = std::min(static_cast<std::size_t>(d1 / bin_width), h.bins - 1);
      auto i2 = std::min(static_cast<std::size_t>(d2 / bin_width), h.bins - 1);
      h.counts[i1 * h.bins + i2]++;
    } else {
      ++h.outside;
    }
  }
  if (h.paired == 0) throw EmptyDataError("no output spike has preceding input spikes");
  double s1 = 0, s2 = 0;
  for (auto [d1, d2] : h.pairs) {
    s1 += d1;
    s2 += d2;
  }
  const double n = static_cast<double>(h.paired);
  h.mean1 = s1 / n;
  h.mean2 = s2 / n;
  double v = 0;
  for (auto [d1, d2] : h.pairs)
    v += (d1 - h.mean1) * (d1 - h.mean1) + (d2 - h.mean2) * (d2 - h.mean2);
  h.dispersion = v / n;
  auto top = std::max_element(h.counts.begin(), h.counts.end()) - h.counts.begin();
  h.modal_i1 = static_cast<std::size_t>(top) / h.bins;
  h.modal_i2 = static_cast<std::size_t>(top) % h.bins;
  return h;
}

double period_offset_mass(const Histogram2D& h, double period, double tol) {
  if (h.pairs.empty()) return 0.0;
  auto near = [&](double d) {
    const double k = std::round(d / period);
    return k >= 1 && std::abs(d - k * period) <= tol;
  };
  std::size_t hits = 0;
  for (auto [d1, d2] : h.pairs)
    if (near(d1) || near(d2)) ++hits;
  return static_cast<double>(hits) / static_cast<double>(h.pairs.size());
}

std::vector<Edge> edges_from_records(std::span<const Record> records) {
  std::vector<Edge> e;
  for (const Record& r : records)
    if (r.kind == RecordKind::connection && r.neuron_id && r.target_id)
      e.push_back({*r.neuron_id, *r.target_id});
  return e;
}

bool signal_path_exists(std::span<const Edge> realized, std::int64_t src, std::int64_t dst) {
  if (src == dst) return true;
  std::multimap<std::int64_t, std::int64_t> next;  // sender -> receiver
  for (const Edge& e : realized) next.emplace(e.to, e.from);
  std::set<std::int64_t> seen{src};
  std::queue<std::int64_t> q;
  q.push(src);
  while (!q.empty()) {
    auto n = q.front();
    q.pop();
    auto [lo, hi] = next.equal_range(n);
    for (auto it = lo; it != hi; ++it) {
      if (it->second == dst) return true;
      if (seen.insert(it->second).second) q.push(it->second);
    }
  }
  return false;
}

double success_rate(std::span<const Edge> realized, const IntendedTopology& intended) {
  if (intended.reachability) {
    for (auto in : intended.inputs)
      if (!signal_path_exists(realized, in, intended.output)) return 0.0;
    return 1.0;
  }
  if (intended.edges.empty()) return 1.0;
  std::set<Edge> have(realized.begin(), realized.end());
  std::size_t hit = 0;
  for (const Edge& e : intended.edges)
    if (have.count(e)) ++hit;
  return static_cast<double>(hit) / static_cast<double>(intended.edges.size());
}

std::vector<double> moving_average(std::span<const double> v, std::size_t window) {
  if (window <= 1) return {v.begin(), v.end()};
  const std::size_t left = (window - 1) / 2, right = window / 2;
  std::vector<double> prefix(v.size() + 1, 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) prefix[i + 1] = prefix[i] + v[i];
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::size_t lo = i >= left ? i - left : 0;
    const std::size_t hi = std::min(v.size(), i + right + 1);
    out[i] = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
  }
  return out;
}

std::vector<KinematicsSample> kinematics_trace(std::span<const Record> records,
                                               std::int64_t agent_id,
                                               std::size_t smoothing_window) {
  std::vector<KinematicsSample> s;
  for (const Record& r : records) {
    if (r.kind != RecordKind::kinematics || r.agent_id != agent_id) continue;
    s.push_back({r.time_ms, r.vx.value_or(0), r.vy.value_or(0), r.ax.value_or(0),
                 r.ay.value_or(0)});
  }
  if (s.empty())
    throw LookupError("no kinematics records for agent " + std::to_string(agent_id));
  if (smoothing_window <= 1) return s;
  std::vector<double> col(s.size());
  for (double KinematicsSample::*m :
       {&KinematicsSample::vx, &KinematicsSample::vy, &KinematicsSample::ax,
        &KinematicsSample::ay}) {
    for (std::size_t i = 0; i < s.size(); ++i) col[i] = s[i].*m;
    auto sm = moving_average(col, smoothing_window);
    for (std::size_t i = 0; i < s.size(); ++i) s[i].*m = sm[i];
  }
  return s;
}

void write_hist1d_csv(const std::filesystem::path& path, const Histogram1D& h) {
  auto os = open_out(path);
  std::string line = "bin_lo,bin_hi,count,density\n";
  os << line;
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    line.clear();
    put(line, h.lo + static_cast<double>(i) * h.bin_width);
    line += ',';
    put(line, h.lo + static_cast<double>(i + 1) * h.bin_width);
    line += ',';
    put(line, static_cast<std::int64_t>(h.counts[i]));
    line += ',';
    put(line, h.density[i]);
    os << line << '\n';
  }
  finish(os, path);
}

void write_hist2d_csv(const std::filesystem::path& path, const Histogram2D& h) {
  auto os = open_out(path);
  os << "dt1_lo,dt1_hi,dt2_lo,dt2_hi,count\n";
  std::string line;
  for (std::size_t i = 0; i < h.bins; ++i)
    for (std::size_t j = 0; j < h.bins; ++j) {
      line.clear();
      put(line, static_cast<double>(i) * h.bin_width);
      line += ',';
      put(line, static_cast<double>(i + 1) * h.bin_width);
      line += ',';
      put(line, static_cast<double>(j) * h.bin_width);
      line += ',';
      put(line, static_cast<double>(j + 1) * h.bin_width);
      line += ',';
      put(line, static_cast<std::int64_t>(h.at(i, j)));
      os << line << '\n';
    }
  finish(os, path);
}

void write_trace_csv(const std::filesystem::path& path, std::span<const KinematicsSample> s) {
  auto os = open_out(path);
  os << "time_ms,vx,vy,ax,ay\n";
  std::string line;
  for (const auto& k : s) {
    line.clear();
    put(line, k.time_ms);
    for (double v : {k.vx, k.vy, k.ax, k.ay}) {
      line += ',';
      put(line, v);
    }
    os << line << '\n';
  }
  finish(os, path);
}

void write_stats_csv(const std::filesystem::path& path,
                     std::span<const std::pair<std::string, double>> stats) {
  auto os = open_out(path);
  os << "stat,value\n";
  std::string line;
  for (const auto& [k, v] : stats) {
    line = k + ",";
    put(line, v);
    os << line << '\n';
  }
  finish(os, path);
}

}  // namespace spinegrow
