#pragma once

namespace fusionkz {

/// Selects between the serial reference loops and their OpenMP versions.
/// Both paths run the same per-item arithmetic in the same order, so their
/// results are bit-identical.
enum class Execution { serial, parallel };

} // namespace fusionkz
