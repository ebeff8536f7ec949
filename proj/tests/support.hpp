#pragma once

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "solnscope/ratlin.hpp"
#include "solnscope/setalg.hpp"
#include "solnscope/specfile.hpp"

namespace testing {

using namespace solnscope;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string source_path(const std::string& rel) { return std::string(SOLNSCOPE_SOURCE_DIR) + "/" + rel; }

inline ProblemSpec load_spec(const std::string& stem) { return parse_spec(read_file(source_path("specs/" + stem + ".spec"))); }

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }
    Q rational(long lo, long hi, long den = 1) {
        Q q(integer(lo * den, hi * den), den);
        q.canonicalize();
        return q;
    }
    QVec vec(std::size_t n, long lo, long hi, long den = 1) {
        QVec v(n);
        for (auto& c : v) c = rational(lo, hi, den);
        return v;
    }
    QMat mat(std::size_t m, std::size_t n, long lo, long hi) {
        QMat A(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) A(i, j) = Q(integer(lo, hi));
        return A;
    }
    bool coin() { return integer(0, 1) == 1; }
};

inline std::vector<double> to_doubles(const SVec& v) {
    std::vector<double> out;
    for (const auto& s : v) out.push_back(s.to_double());
    return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
    return d;
}

}  // namespace testing
