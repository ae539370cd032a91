#pragma once
// File formats: NetPBM grayscale images (P2/P5) normalized to [0,1], a binary
// coefficient container (JSON header + little-endian raw doubles), and
// diff-friendly text helpers (shortest round-trip decimals, sorted JSON keys).
#include <string>
#include <vector>

#include "conelet/transform.hpp"

namespace conelet {

// --- images -----------------------------------------------------------------
// Reads P2 (ASCII) or P5 (binary, 1- or 2-byte samples); values divided by
// maxval. Throws std::runtime_error on malformed input.
std::vector<double> read_pgm(const std::string& path, int& rows, int& cols);

// Writes P5 with 16-bit samples (big-endian per the format); values are
// clamped to [0,1] and rounded.
void write_pgm(const std::string& path, const std::vector<double>& img,
               int rows, int cols);

// --- coefficient container ---------------------------------------------------
// Layout: magic "CONELET\n", u64 little-endian header byte count, JSON header
// (system echo + subband index table), then data.size() little-endian f64.
// Round-trips bit-exactly.
void write_coefficients(const std::string& path, const CoefficientSet& c);
CoefficientSet read_coefficients(const std::string& path);

// --- text helpers ------------------------------------------------------------
// shortest decimal string that parses back to exactly v
std::string format_double(double v);

} // namespace conelet
