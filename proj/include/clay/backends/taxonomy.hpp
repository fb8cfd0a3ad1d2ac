#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "clay/core/hierarchy.hpp"

namespace clay {

// Full style vocabularies the mock samples from. Same tree shape as a
// StyleHierarchy, plus a version tag.
struct Taxonomy {
  std::string version;
  StyleHierarchy tree;
  std::string digest; // of the canonical tree
};

inline constexpr std::array<std::string_view, 6> kStudyStyles = {
    "feminine", "vintage", "sporty", "chic", "hip-hop", "futuristic"};

// Empty when the document is usable: structurally sound and covering every
// study style.
std::vector<std::string> taxonomy_problems(const Taxonomy &t);

// Parses and validates; throws a configuration Error naming the problems.
// `source` labels the document in messages.
Taxonomy parse_taxonomy(std::string_view text, std::string_view source);
Taxonomy load_taxonomy_file(const std::string &path);
const Taxonomy &bundled_taxonomy();

// Case-insensitive: indices of taxonomy styles whose name contains `term` or
// is contained in it.
std::vector<std::size_t> match_styles(const Taxonomy &t, std::string_view term);

std::string lowercase(std::string_view s);

} // namespace clay
