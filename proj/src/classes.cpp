// Copyright 2026 The uavtrack Authors.
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

#include "uavtrack/classes.hpp"

#include <cctype>

#include "uavtrack/error.hpp"

namespace uavtrack {

namespace {
constexpr const char* kBuiltinNames[ClassRegistry::kNumBuiltin] = {
    "bucket", "watertank", "bottle", "pool", "tire", "puddle"};
}  // namespace

ClassRegistry::ClassRegistry() {
  for (const char* name : kBuiltinNames) add(name);
}

std::string ClassRegistry::normalize(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  for (unsigned char c : name) {
    if (std::isspace(c)) continue;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::optional<ClassId> ClassRegistry::find(std::string_view name) const {
  const auto it = index_.find(normalize(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ClassId ClassRegistry::add(std::string_view name) {
  std::string key = normalize(name);
  if (key.empty()) throw Error("class name is empty after normalization");
  const auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  const ClassId id = static_cast<ClassId>(names_.size());
  names_.push_back(key);
  index_.emplace(std::move(key), id);
  return id;
}

const std::string& ClassRegistry::name(ClassId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= names_.size())
    throw Error("class id out of range: " + std::to_string(id));
  return names_[static_cast<std::size_t>(id)];
}

}  // namespace uavtrack
