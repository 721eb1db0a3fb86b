// Copyright 2026 The scourbench Authors.
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

#ifndef SCOURBENCH_CHECKSUM_HPP_
#define SCOURBENCH_CHECKSUM_HPP_

#include <filesystem>
#include <string>
#include <string_view>

namespace scourbench {

// Lower-case hex SHA-256 digests (OpenSSL EVP).
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace scourbench

#endif  // SCOURBENCH_CHECKSUM_HPP_
