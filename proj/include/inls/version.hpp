#pragma once

namespace inls {

inline constexpr const char* kVersion = "inls-workbench 1.0.0";

}  // namespace inls
