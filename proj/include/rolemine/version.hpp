#pragma once

namespace rolemine {

inline constexpr const char* kToolVersion = "0.1.0";

// Bumped whenever an on-disk format changes incompatibly.
inline constexpr int kStoreSchemaVersion = 1;
inline constexpr int kArtifactSchemaVersion = 1;

} // namespace rolemine
