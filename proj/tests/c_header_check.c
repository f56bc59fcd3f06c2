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
/* Compiled as C: the public header must stay valid C. */
#include "spinegrow/spinegrow.h"

int sg_c_header_check(void) {
  sg_params* p = NULL;
  if (sg_params_create(&p) != SG_OK) return 1;
  double v = 0.0;
  sg_status s = sg_params_get(p, "tau_m", &v);
  sg_params_destroy(p);
  return s == SG_OK && v == 520.0 ? 0 : 1;
}
