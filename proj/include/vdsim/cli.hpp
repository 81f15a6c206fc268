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

#ifndef VDSIM_CLI_HPP
#define VDSIM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace vdsim::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 1,  // bad flags, bad config, degenerate input
  kResource = 2,    // dimension or memory caps, search caps
  kCheckFailed = 3, // a built-in check ran and did not pass
};

/// Entry point shared by the vdsim binary and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string version();

}  // namespace vdsim::cli

#endif  // VDSIM_CLI_HPP
