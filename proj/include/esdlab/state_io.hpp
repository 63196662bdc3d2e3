#pragma once

// JSON state files: {"a":r,"b":r,"c":r,"d":r,"z":[re,im],"w":[re,im]}.
// Unknown keys, missing keys and non-finite numbers are rejected.

#include <filesystem>
#include <string>

#include "esdlab/core_state.hpp"

namespace esdlab {

XState parse_xstate_json(const std::string& text);
XState load_xstate(const std::filesystem::path& path);
std::string xstate_to_json(const XState& s);

}  // namespace esdlab
