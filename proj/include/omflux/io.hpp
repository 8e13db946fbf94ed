// io.hpp — Bit-stable output emission: CSV with fixed %.12e formatting, 16-bit
// binary PGM heatmaps, atomic temp-and-rename writes, and FNV-1a checksums.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "omflux/lattice.hpp"

namespace omflux {

std::string sci(double x);  // %.12e

// Writes to <path>.tmp and renames, so readers never see partial files.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

struct PgmImage {
    int width{};
    int height{};
    std::vector<double> data;  // row-major, height * width
};

// Binary P5, 16-bit big-endian samples, values min-max normalized. A JSON
// sidecar <path>.json records the normalization range and dimensions.
void write_pgm16_atomic(const std::filesystem::path& path, const PgmImage& image);

std::uint64_t fnv1a(const std::string& bytes);
std::uint64_t fnv1a_file(const std::filesystem::path& path);

// Lattice dumps: sites.csv, links.csv, fluxes.csv in the given directory.
void write_lattice_csv(const std::filesystem::path& dir, const LatticeGraph& graph);

}  // namespace omflux
