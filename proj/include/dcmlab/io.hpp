#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "dcmlab/graph.hpp"
#include "dcmlab/measure.hpp"
#include "dcmlab/tails.hpp"
#include "dcmlab/walk.hpp"

namespace dcmlab {

// Sequence file: header line "n m", then n lines "d_in d_out".
void write_sequence(std::ostream& os, const BiDegreeSequence& seq);
void write_sequence(const std::filesystem::path& path, const BiDegreeSequence& seq);
BiDegreeSequence read_sequence(std::istream& is);
BiDegreeSequence read_sequence(const std::filesystem::path& path);

// Edge list: sequence header, then one "tail_vertex head_vertex" line per
// edge; loops/multi-edges appear as repeated lines.
void write_edge_list(std::ostream& os, const Digraph& g);
void write_edge_list(const std::filesystem::path& path, const Digraph& g);

// Binary matching dump: little-endian 64-bit indices, length m.
void write_matching(const std::filesystem::path& path, const Digraph& g);
Digraph read_matching(const std::filesystem::path& path, const BiDegreeSequence& seq);

// CSV "vertex,prob" sorted by vertex id.
void write_distribution(std::ostream& os, const DistVector& dist);
void write_distribution(const std::filesystem::path& path, const DistVector& dist);

// CSV "t,rho,d_tv,starts_used".
void write_mix_profile(std::ostream& os, const MixProfile& profile);
void write_mix_profile(const std::filesystem::path& path, const MixProfile& profile);

// One value per line.
void write_measure(std::ostream& os, const EmpiricalMeasure& measure);
void write_measure(const std::filesystem::path& path, const EmpiricalMeasure& measure);

// CSV "root,tail,head".
void write_skeleton(std::ostream& os, const Skeleton& skeleton);
void write_skeleton(const std::filesystem::path& path, const Skeleton& skeleton);

// CSV "a,tail_phi,tail_psi,lo,hi,pass_phi,pass_psi".
void write_tail_table(std::ostream& os, const TailCompareTable& table);
void write_tail_table(const std::filesystem::path& path, const TailCompareTable& table);

// JSON {kind, kappa, grid:[{a, tail, lo, hi, pass}]}.
std::string classification_json(const TailClassification& cls);

}  // namespace dcmlab
