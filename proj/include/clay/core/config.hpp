#pragma once

#include "json.hpp"

namespace clay {

// Counts are placeholders in the original design sketches; all configurable.
struct HierarchyCardinality {
  int sub_styles_per_style = 3;
  int elements_per_sub_style = 4;
  int sub_elements_per_element = 3;
};

struct CompositionConfig {
  int moodboard_tiles = 6;
  int design_variants = 4;
  double fashion_ratio = 0.5;
  int count_step = 2;
  double ratio_step = 0.25;
  int max_count = 24;
};

struct WorkflowConfig {
  HierarchyCardinality cardinality;
  CompositionConfig composition;
  int image_width = 256;
  int image_height = 256;
};

// Throws a validation Error when a bound is violated.
void validate(const WorkflowConfig &cfg);

nlohmann::json to_json(const WorkflowConfig &cfg);
// Missing keys keep their defaults.
WorkflowConfig workflow_config_from_json(const nlohmann::json &j,
                                         WorkflowConfig base = {});

} // namespace clay
