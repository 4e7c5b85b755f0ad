// Copyright 2026 The Metamorph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Replays fixed predictions over the JSON-lines protocol. Sources containing
// a while loop get the "skip" answer, everything else gets "is|prime".
//
//   stub_model            normal replay
//   stub_model --hang     reads requests, never answers
//   stub_model --garbage  answers with a line that is not JSON
//   stub_model --once     answers the first request, then exits

#include <chrono>
#include <cstring>
#include <iostream>
#include <string>
#include <thread>

#include <json.hpp>

int main(int argc, char** argv) {
  const bool hang = argc > 1 && std::strcmp(argv[1], "--hang") == 0;
  const bool garbage = argc > 1 && std::strcmp(argv[1], "--garbage") == 0;
  const bool once = argc > 1 && std::strcmp(argv[1], "--once") == 0;
  std::string line;
  while (std::getline(std::cin, line)) {
    if (hang) {
      std::this_thread::sleep_for(std::chrono::hours(1));
      continue;
    }
    if (garbage) {
      std::cout << "this is not json" << std::endl;
      continue;
    }
    const auto request = nlohmann::json::parse(line, nullptr, false);
    if (request.is_discarded()) continue;
    const std::string source = request.value("source", "");
    nlohmann::json predictions;
    if (source.find("while") != std::string::npos) {
      predictions = {{{"label", "skip"}, {"score", 0.36}},
                     {{"label", "wait|for"}, {"score", 0.22}},
                     {{"label", "loop"}, {"score", 0.18}},
                     {{"label", "check"}, {"score", 0.14}},
                     {{"label", "run"}, {"score", 0.10}}};
    } else {
      predictions = {{{"label", "is|prime"}, {"score", 0.82}},
                     {{"label", "check"}, {"score", 0.07}},
                     {{"label", "is|valid"}, {"score", 0.05}},
                     {{"label", "test"}, {"score", 0.04}},
                     {{"label", "compute"}, {"score", 0.02}}};
    }
    nlohmann::json reply = {{"id", request.value("id", std::uint64_t{0})}, {"predictions", predictions}};
    std::cout << reply.dump() << std::endl;
    if (once) break;
  }
  return 0;
}
