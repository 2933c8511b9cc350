#pragma once

namespace diskmean {

inline constexpr int kVersionMajor = 1;
inline constexpr int kVersionMinor = 0;
inline constexpr int kVersionPatch = 0;
inline constexpr const char* kVersionString = "1.0.0";

/// Schema version stamped into every persisted JSON document.
inline constexpr int kSchemaVersion = 1;

}  // namespace diskmean
