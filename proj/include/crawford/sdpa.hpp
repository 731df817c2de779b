#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "crawford/error.hpp"
#include "crawford/sdp.hpp"

namespace crawford {

/// 17 significant digits; integral values keep a trailing ".0".
inline std::string format_sdpa_number(double v) {
  if (v == 0.0) v = 0.0; // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

/// Writes the instance in SDPA sparse format with block structure (2n, 2, 1).
/// Only block-diagonal entries are representable; the coupling constraints of
/// the subspace family vanish on block-diagonal matrices and are written with
/// no entries.
inline void write_sdpa(const SdpInstance& inst, std::ostream& out) {
  const auto sizes = inst.block_sizes();
  out << inst.constraints.size() << "\n3\n" << sizes[0] << ' ' << sizes[1] << ' ' << sizes[2] << '\n';
  for (std::size_t i = 0; i < inst.rhs.size(); ++i) {
    if (i) out << ' ';
    out << format_sdpa_number(to_double(inst.rhs[i]));
  }
  out << '\n';
  auto emit = [&](std::size_t matno, const BlockDiagSymmetric<Rational>& f) {
    for (std::size_t b = 0; b < 3; ++b) {
      const auto& blk = f.blocks[b];
      for (std::size_t i = 0; i < blk.size(); ++i)
        for (std::size_t j = i; j < blk.size(); ++j)
          if (blk(i, j) != 0)
            out << matno << ' ' << b + 1 << ' ' << i + 1 << ' ' << j + 1 << ' '
                << format_sdpa_number(to_double(blk(i, j))) << '\n';
    }
  };
  emit(0, inst.objective);
  for (std::size_t k = 0; k < inst.constraints.size(); ++k)
    emit(k + 1, BlockDiagSymmetric<Rational>::block_part(inst.constraints[k]));
}

inline void export_sdpa(const SdpInstance& inst, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  write_sdpa(inst, f);
  f.flush();
  if (!f) throw IoError("write failed for '" + path + "'");
}

/// A parsed SDPA sparse file: matrices[0] is F0, matrices[k] is F_k.
struct SdpaProblem {
  std::vector<std::size_t> block_sizes;
  std::vector<double> rhs;
  std::vector<BlockDiagSymmetric<double>> matrices;
};

/// Reads files in the layout written by write_sdpa: no comment lines, three
/// blocks of sizes (2n, 2, 1).
inline SdpaProblem parse_sdpa(std::istream& in) {
  SdpaProblem p;
  long mdim = 0, nblock = 0;
  if (!(in >> mdim >> nblock) || mdim < 0) throw ParseError("SDPA: missing mDIM/nBLOCK");
  if (nblock != 3) throw ParseError("SDPA: expected 3 blocks, got " + std::to_string(nblock));
  for (long b = 0; b < nblock; ++b) {
    long s = 0;
    if (!(in >> s)) throw ParseError("SDPA: missing block size");
    if (s < 0) s = -s; // negative sizes denote diagonal blocks
    p.block_sizes.push_back(static_cast<std::size_t>(s));
  }
  if (p.block_sizes[1] != 2 || p.block_sizes[2] != 1 || p.block_sizes[0] % 2 != 0 || p.block_sizes[0] == 0)
    throw ParseError("SDPA: unsupported block structure");
  const std::size_t n = p.block_sizes[0] / 2;
  p.rhs.resize(static_cast<std::size_t>(mdim));
  for (auto& b : p.rhs)
    if (!(in >> b)) throw ParseError("SDPA: truncated right-hand side");
  p.matrices.assign(static_cast<std::size_t>(mdim) + 1, BlockDiagSymmetric<double>(n));
  long matno = 0, blk = 0, i = 0, j = 0;
  double v = 0;
  while (in >> matno >> blk >> i >> j >> v) {
    if (matno < 0 || matno > mdim || blk < 1 || blk > 3) throw ParseError("SDPA: entry index out of range");
    auto& target = p.matrices[static_cast<std::size_t>(matno)].blocks[static_cast<std::size_t>(blk - 1)];
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > target.size() || static_cast<std::size_t>(j) > target.size())
      throw ParseError("SDPA: entry position out of range");
    target.set(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), v);
  }
  if (!in.eof()) throw ParseError("SDPA: malformed entry line");
  return p;
}

inline SdpaProblem read_sdpa(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "'");
  return parse_sdpa(f);
}

} // namespace crawford
