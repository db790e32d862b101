#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "casimir/materials.hpp"

namespace casimir::cli {

struct BuiltinMaterial {
  std::string name;
  std::string description;
};

// Resolves material references: built-in names (vacuum, mirror, absorber and
// the parameter files shipped in the data directory) or paths to optical
// data / Drude-Lorentz files.
class MaterialRegistry {
 public:
  // Search order: explicit directory, $CASIMIR_DATA_DIR, the source tree,
  // the install prefix.
  explicit MaterialRegistry(const std::string& data_dir = "");

  DielectricModel resolve(const std::string& spec) const;
  std::vector<BuiltinMaterial> builtins() const;
  const std::filesystem::path& data_dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

}  // namespace casimir::cli
