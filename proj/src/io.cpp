#include "dcmlab/io.hpp"

#include <array>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "dcmlab/errors.hpp"

namespace dcmlab {

namespace {

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = {}) {
    std::ofstream os(path, mode);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    return os;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode = {}) {
    std::ifstream is(path, mode);
    if (!is) throw Error("cannot open " + path.string() + " for reading");
    return is;
}

void full_precision(std::ostream& os) { os << std::setprecision(17); }

}  // namespace

void write_sequence(std::ostream& os, const BiDegreeSequence& seq) {
    os << seq.n() << ' ' << seq.m << '\n';
    for (Index v = 0; v < seq.n(); ++v) {
        os << seq.in_deg[v] << ' ' << seq.out_deg[v] << '\n';
    }
}

void write_sequence(const std::filesystem::path& path, const BiDegreeSequence& seq) {
    auto os = open_out(path);
    write_sequence(os, seq);
}

BiDegreeSequence read_sequence(std::istream& is) {
    std::int64_t n = 0;
    std::int64_t m = 0;
    if (!(is >> n >> m) || n < 1) throw MalformedSequence("bad sequence header");
    Eigen::ArrayXi in_deg(n);
    Eigen::ArrayXi out_deg(n);
    for (std::int64_t v = 0; v < n; ++v) {
        if (!(is >> in_deg[v] >> out_deg[v])) {
            throw MalformedSequence("sequence file truncated at vertex " + std::to_string(v));
        }
    }
    BiDegreeSequence seq = make_sequence(std::move(in_deg), std::move(out_deg));
    if (seq.m != m) throw MalformedSequence("header edge count does not match degrees");
    return seq;
}

BiDegreeSequence read_sequence(const std::filesystem::path& path) {
    auto is = open_in(path);
    return read_sequence(is);
}

void write_edge_list(std::ostream& os, const Digraph& g) {
    write_sequence(os, g.seq);
    for (std::int64_t t = 0; t < g.m(); ++t) {
        os << g.tail_owner[static_cast<std::size_t>(t)] << ' '
           << g.out_neighbor[static_cast<std::size_t>(t)] << '\n';
    }
}

void write_edge_list(const std::filesystem::path& path, const Digraph& g) {
    auto os = open_out(path);
    write_edge_list(os, g);
}

void write_matching(const std::filesystem::path& path, const Digraph& g) {
    auto os = open_out(path, std::ios::binary);
    for (std::int64_t head : g.matching) {
        std::array<char, 8> buf{};
        auto u = static_cast<std::uint64_t>(head);
        for (int b = 0; b < 8; ++b) buf[static_cast<std::size_t>(b)] = static_cast<char>((u >> (8 * b)) & 0xff);
        os.write(buf.data(), 8);
    }
    if (!os) throw Error("failed writing matching to " + path.string());
}

Digraph read_matching(const std::filesystem::path& path, const BiDegreeSequence& seq) {
    auto is = open_in(path, std::ios::binary);
    std::vector<std::int64_t> matching(static_cast<std::size_t>(seq.m));
    for (auto& head : matching) {
        std::array<char, 8> buf{};
        if (!is.read(buf.data(), 8)) throw Error("matching file truncated: " + path.string());
        std::uint64_t u = 0;
        for (int b = 0; b < 8; ++b) {
            u |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[static_cast<std::size_t>(b)]))
                 << (8 * b);
        }
        head = static_cast<std::int64_t>(u);
    }
    if (is.get() != std::ifstream::traits_type::eof()) {
        throw Error("matching file longer than expected: " + path.string());
    }
    return assemble_digraph(seq, std::move(matching));
}

void write_distribution(std::ostream& os, const DistVector& dist) {
    full_precision(os);
    os << "vertex,prob\n";
    for (Index v = 0; v < dist.size(); ++v) os << v << ',' << dist(v) << '\n';
}

void write_distribution(const std::filesystem::path& path, const DistVector& dist) {
    auto os = open_out(path);
    write_distribution(os, dist);
}

void write_mix_profile(std::ostream& os, const MixProfile& profile) {
    full_precision(os);
    os << "t,rho,d_tv,starts_used\n";
    for (const auto& row : profile.rows) {
        os << row.t << ',' << row.rho << ',' << row.d_tv << ',' << row.starts_used << '\n';
    }
}

void write_mix_profile(const std::filesystem::path& path, const MixProfile& profile) {
    auto os = open_out(path);
    write_mix_profile(os, profile);
}

void write_measure(std::ostream& os, const EmpiricalMeasure& measure) {
    full_precision(os);
    for (double x : measure.sorted()) os << x << '\n';
}

void write_measure(const std::filesystem::path& path, const EmpiricalMeasure& measure) {
    auto os = open_out(path);
    write_measure(os, measure);
}

void write_skeleton(std::ostream& os, const Skeleton& skeleton) {
    os << "root,tail,head\n";
    for (const auto& [root, tail, head] : skeleton.matched_pairs) {
        os << root << ',' << tail << ',' << head << '\n';
    }
}

void write_skeleton(const std::filesystem::path& path, const Skeleton& skeleton) {
    auto os = open_out(path);
    write_skeleton(os, skeleton);
}

void write_tail_table(std::ostream& os, const TailCompareTable& table) {
    full_precision(os);
    os << "a,tail_phi,tail_psi,lo,hi,pass_phi,pass_psi\n";
    for (const auto& row : table.rows) {
        os << row.a << ',' << row.tail_phi << ',' << row.tail_psi << ',' << row.lo << ','
           << row.hi << ',' << (row.pass_phi ? 1 : 0) << ',' << (row.pass_psi ? 1 : 0) << '\n';
    }
}

void write_tail_table(const std::filesystem::path& path, const TailCompareTable& table) {
    auto os = open_out(path);
    write_tail_table(os, table);
}

std::string classification_json(const TailClassification& cls) {
    nlohmann::json j;
    switch (cls.kind) {
        case TailKind::power_law:
            j["kind"] = "power_law";
            break;
        case TailKind::kappa_light:
            j["kind"] = "kappa_light";
            break;
        case TailKind::extremal:
            j["kind"] = "extremal";
            break;
        case TailKind::none:
            j["kind"] = "none";
            break;
    }
    j["kappa"] = cls.kappa;
    j["cutoff_ok"] = cls.cutoff_ok;
    j["cutoff_threshold"] = cls.cutoff_threshold;
    j["grid"] = nlohmann::json::array();
    for (const auto& check : cls.witness_grid) {
        j["grid"].push_back({{"a", check.a},
                             {"tail", check.tail},
                             {"lo", check.lo},
                             {"hi", check.hi},
                             {"pass", check.pass}});
    }
    return j.dump(2);
}

}  // namespace dcmlab
