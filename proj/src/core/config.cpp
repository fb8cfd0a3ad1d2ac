#include "clay/core/config.hpp"

#include "clay/common/error.hpp"

namespace clay {

using nlohmann::json;

void validate(const WorkflowConfig &cfg) {
  const auto &c = cfg.cardinality;
  const auto &m = cfg.composition;
  if (c.sub_styles_per_style < 1 || c.elements_per_sub_style < 1 ||
      c.sub_elements_per_element < 1)
    throw validation_error("hierarchy cardinalities must be >= 1");
  if (m.moodboard_tiles < 1 || m.design_variants < 1 || m.count_step < 1 ||
      m.max_count < 1)
    throw validation_error("composition counts must be >= 1");
  if (m.moodboard_tiles > m.max_count || m.design_variants > m.max_count)
    throw validation_error("default composition counts exceed max_count");
  if (!(m.fashion_ratio >= 0.0 && m.fashion_ratio <= 1.0) ||
      !(m.ratio_step > 0.0 && m.ratio_step <= 1.0))
    throw validation_error("fashion ratio settings must lie in [0, 1]");
  if (cfg.image_width < 16 || cfg.image_height < 16)
    throw validation_error("image size must be at least 16x16");
}

json to_json(const WorkflowConfig &cfg) {
  const auto &c = cfg.cardinality;
  const auto &m = cfg.composition;
  return json{
      {"cardinality",
       {{"sub_styles_per_style", c.sub_styles_per_style},
        {"elements_per_sub_style", c.elements_per_sub_style},
        {"sub_elements_per_element", c.sub_elements_per_element}}},
      {"composition",
       {{"moodboard_tiles", m.moodboard_tiles},
        {"design_variants", m.design_variants},
        {"fashion_ratio", m.fashion_ratio},
        {"count_step", m.count_step},
        {"ratio_step", m.ratio_step},
        {"max_count", m.max_count}}},
      {"image_width", cfg.image_width},
      {"image_height", cfg.image_height},
  };
}

WorkflowConfig workflow_config_from_json(const json &j, WorkflowConfig cfg) {
  if (!j.is_object())
    throw validation_error("workflow config must be an object");
  try {
    if (auto it = j.find("cardinality"); it != j.end()) {
      auto &c = cfg.cardinality;
      c.sub_styles_per_style =
          it->value("sub_styles_per_style", c.sub_styles_per_style);
      c.elements_per_sub_style =
          it->value("elements_per_sub_style", c.elements_per_sub_style);
      c.sub_elements_per_element =
          it->value("sub_elements_per_element", c.sub_elements_per_element);
    }
    if (auto it = j.find("composition"); it != j.end()) {
      auto &m = cfg.composition;
      m.moodboard_tiles = it->value("moodboard_tiles", m.moodboard_tiles);
      m.design_variants = it->value("design_variants", m.design_variants);
      m.fashion_ratio = it->value("fashion_ratio", m.fashion_ratio);
      m.count_step = it->value("count_step", m.count_step);
      m.ratio_step = it->value("ratio_step", m.ratio_step);
      m.max_count = it->value("max_count", m.max_count);
    }
    cfg.image_width = j.value("image_width", cfg.image_width);
    cfg.image_height = j.value("image_height", cfg.image_height);
  } catch (const json::exception &e) {
    throw validation_error(std::string("workflow config: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

} // namespace clay
