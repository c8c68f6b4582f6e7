#pragma once

#include <filesystem>
#include <string>

#include "nagao/family.hpp"
#include "nagao/poly_modp.hpp"
#include "nagao/prime_field.hpp"

namespace testing {

inline std::filesystem::path family_file(const std::string& stem) {
  return std::filesystem::path(NAGAO_FAMILY_DIR) / (stem + ".fam");
}

inline nagao::FamilyModel shipped(const std::string& stem) {
  return nagao::FamilyModel(nagao::load_family(family_file(stem)));
}

// a finite hyperelliptic fiber y^2 = f with the given generic degree
inline nagao::FiberModel plain_fiber(const nagao::FieldCtx& ctx, std::initializer_list<std::int64_t> ascending,
                                     int generic_degree) {
  nagao::FiberModel m;
  m.point = nagao::FiberPoint::finite(0);
  m.kind = nagao::FamilyKind::hyperelliptic;
  m.p = ctx.p();
  nagao::modp::Poly f;
  for (auto c : ascending) f.push_back(ctx.reduce(c));
  nagao::modp::trim(f);
  m.polys = {f};
  m.generic_degrees = {generic_degree};
  return m;
}

inline const char* const kShippedFamilies[] = {"constant_E", "shioda_g1", "shioda_g2", "multicover_ex2"};

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("nagao_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing
