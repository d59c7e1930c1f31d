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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace uavtrack {

using ClassId = std::int32_t;

/// Dense class vocabulary. Ships with the six breeding-site classes
/// (bucket, watertank, bottle, pool, tire, puddle) at ids 0..5; extra
/// classes may be appended but built-ins are never reordered, so ids in
/// reports stay stable. Names are matched after normalization (lowercase,
/// whitespace stripped), so "Water Tank" resolves to watertank.
class ClassRegistry {
 public:
  ClassRegistry();

  /// Lowercase, all whitespace removed.
  static std::string normalize(std::string_view name);

  std::optional<ClassId> find(std::string_view name) const;

  /// Appends a new class (normalized); returns the existing id if the name
  /// is already registered. Throws Error on an empty normalized name.
  ClassId add(std::string_view name);

  const std::string& name(ClassId id) const;
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  static constexpr std::size_t kNumBuiltin = 6;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, ClassId> index_;
};

}  // namespace uavtrack
