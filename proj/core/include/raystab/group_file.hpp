#pragma once

#include <filesystem>
#include <string_view>

#include "raystab/tree.hpp"

namespace raystab {

// Line-oriented group definition:
//   alphabet 2
//   gen a perm=1,0 sections=1,1
//   gen b perm=0,1 sections=a,b
//   state s perm=... sections=...
// Section entries name a gen or state, or 1 for the identity. '#' starts a comment.
GeneratingSet parse_group(std::string_view text);
GeneratingSet load_group(const std::filesystem::path& path);

}  // namespace raystab
