#pragma once

#include <filesystem>
#include <iosfwd>

namespace jbpcic {

// Re-runs every trace recorded in `dir` from its config.txt and checks that
// the regenerated traces and summary match the stored files byte for byte.
// A directory without config.txt is treated as a set of such directories.
bool verify_golden(const std::filesystem::path& dir, std::ostream& log);

// The numerical property suite; one line per property.
bool verify_properties(std::ostream& log);

}  // namespace jbpcic
