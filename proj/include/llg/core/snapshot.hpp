#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "llg/core/field.hpp"
#include "llg/core/params.hpp"

// Binary field snapshot:
//   bytes 0..15  magic "LLGFIELD\0\0\0\0v001"
//   u64 LE       byte length of the JSON header
//   JSON header  {dim, sizes, lengths, dtype: "f64"|"c128", time, epsilon, a, components}
//   samples      little-endian, row-major; c128 stores (re, im) pairs;
//                multi-component real fields are concatenated component by component.

namespace llg {

inline constexpr std::array<char, 16> kSnapshotMagic = {'L', 'L', 'G', 'F', 'I', 'E', 'L', 'D',
                                                        '\0', '\0', '\0', '\0', 'v', '0', '0', '1'};

struct SnapshotHeader {
  Grid grid = Grid::cube(1, 8);
  std::string dtype;  // "f64" or "c128"
  double time = 0.0;
  LlgParams params;
  int components = 1;
};

struct Snapshot {
  SnapshotHeader header;
  std::vector<double> raw;  // doubles as stored (interleaved for c128)

  ComplexField as_complex() const;
  RealField component(int c) const;
};

void write_snapshot(std::ostream& os, const ComplexField& f, double time, const LlgParams& params);
void write_snapshot(std::ostream& os, std::span<const RealField> components, double time,
                    const LlgParams& params);
Snapshot read_snapshot(std::istream& is);

void write_snapshot(const std::filesystem::path& path, const ComplexField& f, double time,
                    const LlgParams& params);
void write_snapshot(const std::filesystem::path& path, std::span<const RealField> components,
                    double time, const LlgParams& params);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace llg
