// Copyright 2026 The vdsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VDSIM_CSV_HPP
#define VDSIM_CSV_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vdsim/sweep.hpp"

namespace vdsim {

inline constexpr const char* kCsvHeader =
    "family,N,G,noise_kind,param,expected_errors,M,trace_distance,mag_error,overhead,seed";

struct CsvMeta {
  std::uint64_t seed = 0;
  std::string version;
  std::string rng;
  // Extra "# key=value" lines, written in order after seed/version/rng.
  std::vector<std::pair<std::string, std::string>> extra;
};

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

std::string rows_to_csv(const std::vector<SweepRow>& rows, const CsvMeta& meta);
void write_csv(const std::vector<SweepRow>& rows, const std::string& path, const CsvMeta& meta);

/// Comment lines are skipped; the header must match exactly.
std::vector<SweepRow> parse_csv(const std::string& text);
std::vector<SweepRow> read_csv(const std::string& path);

}  // namespace vdsim

#endif  // VDSIM_CSV_HPP
