#pragma once

#include <string_view>
#include <vector>

namespace rca {

/// Copies of the versioned files under data/ compiled into the library, so the CLI and
/// tests do not depend on the working directory. Throws std::out_of_range for unknown names.
[[nodiscard]] std::string_view embedded_file(std::string_view name);
[[nodiscard]] std::vector<std::string_view> embedded_file_names();

}  // namespace rca
