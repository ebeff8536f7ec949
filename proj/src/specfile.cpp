#include "solnscope/specfile.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "solnscope/dsl.hpp"
#include "solnscope/errors.hpp"

namespace solnscope {

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> v{"existence", "compactness", "uniqueness", "moreau", "connect", "exactness", "influence"};
    return v;
}

namespace {

struct Field {
    std::string value;
    int line = 0, column = 0;
};

std::string trim(const std::string& s, std::size_t& lead) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
        lead = s.size();
        return "";
    }
    std::size_t z = s.find_last_not_of(" \t\r");
    lead = a;
    return s.substr(a, z - a + 1);
}

// bracketed list of rationals, e.g. "[1, -2/3]"; pos advances past the closing bracket
QVec parse_list(const std::string& s, std::size_t& pos, int line, int col) {
    auto skip = [&] {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    };
    skip();
    if (pos >= s.size() || s[pos] != '[') throw ParseError("expected '['", line, col + static_cast<int>(pos));
    ++pos;
    QVec out;
    skip();
    if (pos < s.size() && s[pos] == ']') {
        ++pos;
        return out;
    }
    for (;;) {
        skip();
        std::size_t start = pos;
        while (pos < s.size() && s[pos] != ',' && s[pos] != ']') ++pos;
        if (pos >= s.size()) throw ParseError("unclosed '['", line, col + static_cast<int>(start));
        std::string tok = s.substr(start, pos - start);
        while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.pop_back();
        if (tok.empty()) throw ParseError("expected a number", line, col + static_cast<int>(start));
        out.push_back(parse_rational(tok, line, col + static_cast<int>(start)));
        if (s[pos] == ']') {
            ++pos;
            return out;
        }
        ++pos;
    }
}

void expect_end(const std::string& s, std::size_t pos, int line, int col) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    if (pos < s.size()) throw ParseError("trailing characters", line, col + static_cast<int>(pos));
}

QMat parse_matrix(const Field& fd) {
    const std::string& s = fd.value;
    std::size_t pos = 0;
    while (pos < s.size() && s[pos] == ' ') ++pos;
    if (pos >= s.size() || s[pos] != '[') throw ParseError("expected '['", fd.line, fd.column + static_cast<int>(pos));
    ++pos;
    std::vector<QVec> rows;
    for (;;) {
        rows.push_back(parse_list(s, pos, fd.line, fd.column));
        while (pos < s.size() && s[pos] == ' ') ++pos;
        if (pos < s.size() && s[pos] == ',') {
            ++pos;
            continue;
        }
        if (pos < s.size() && s[pos] == ']') {
            ++pos;
            break;
        }
        throw ParseError("expected ',' or ']'", fd.line, fd.column + static_cast<int>(pos));
    }
    expect_end(s, pos, fd.line, fd.column);
    std::size_t cols = rows.front().size();
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].size() != cols)
            throw DimensionError("line " + std::to_string(fd.line) + ": row " + std::to_string(i + 1) + " of A has " + std::to_string(rows[i].size()) +
                                 " entries, row 1 has " + std::to_string(cols));
    if (cols == 0) throw DimensionError("line " + std::to_string(fd.line) + ": A has no columns");
    return QMat::from_rows(rows, cols);
}

}  // namespace

ProblemSpec parse_spec(const std::string& text) {
    std::map<std::string, Field> fields;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::size_t lead = 0;
        std::string s = trim(raw, lead);
        if (s.empty() || s[0] == '#') continue;
        std::size_t eq = raw.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", line, static_cast<int>(lead) + 1);
        std::size_t klead = 0, vlead = 0;
        std::string key = trim(raw.substr(0, eq), klead);
        std::string rest = raw.substr(eq + 1);
        std::string value = trim(rest, vlead);
        static const std::vector<std::string> keys{"name", "kind", "function", "A", "b", "checks"};
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw ParseError("unknown key '" + key + "'", line, static_cast<int>(klead) + 1);
        if (fields.count(key)) throw ParseError("duplicate key '" + key + "'", line, static_cast<int>(klead) + 1);
        fields[key] = Field{value, line, static_cast<int>(eq + 1 + vlead) + 1};
    }
    int last = line + 1;
    for (const char* k : {"kind", "function", "A", "b"})
        if (!fields.count(k)) throw ParseError(std::string("missing key '") + k + "'", last, 1);

    ProblemSpec P;
    if (fields.count("name")) P.name = fields["name"].value;
    const Field& kind = fields["kind"];
    if (kind.value == "regularized")
        P.kind = ProblemKind::Regularized;
    else if (kind.value == "constrained")
        P.kind = ProblemKind::Constrained;
    else
        throw ParseError("kind must be 'regularized' or 'constrained'", kind.line, kind.column);

    P.A = parse_matrix(fields["A"]);
    const Field& bf = fields["b"];
    std::size_t pos = 0;
    P.b = parse_list(bf.value, pos, bf.line, bf.column);
    expect_end(bf.value, pos, bf.line, bf.column);
    if (P.b.size() != P.A.rows())
        throw DimensionError("line " + std::to_string(bf.line) + ": b has " + std::to_string(P.b.size()) + " entries, A has " +
                             std::to_string(P.A.rows()) + " rows");

    const Field& ff = fields["function"];
    P.f = parse_function(ff.value, P.A.cols(), ff.line, ff.column);
    P.function = to_dsl(P.f);

    if (fields.count("checks")) {
        const Field& cf = fields["checks"];
        std::size_t start = 0;
        while (start <= cf.value.size()) {
            std::size_t comma = cf.value.find(',', start);
            if (comma == std::string::npos) comma = cf.value.size();
            std::size_t l = 0;
            std::string c = trim(cf.value.substr(start, comma - start), l);
            const auto& kc = known_checks();
            if (std::find(kc.begin(), kc.end(), c) == kc.end())
                throw ParseError("unknown check '" + c + "'", cf.line, cf.column + static_cast<int>(start + l));
            if (std::find(P.checks.begin(), P.checks.end(), c) == P.checks.end()) P.checks.push_back(c);
            start = comma + 1;
        }
    }
    return P;
}

std::string render_vector(const QVec& v) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + qstr(v[k]);
    return s + "]";
}

std::string render_matrix(const QMat& A) {
    std::string s = "[";
    for (std::size_t i = 0; i < A.rows(); ++i) s += (i ? "," : "") + render_vector(A.row(i));
    return s + "]";
}

std::string render_spec(const ProblemSpec& spec) {
    std::string s;
    if (!spec.name.empty()) s += "name = " + spec.name + "\n";
    s += std::string("kind = ") + (spec.kind == ProblemKind::Regularized ? "regularized" : "constrained") + "\n";
    s += "function = " + (spec.function.empty() ? to_dsl(spec.f) : spec.function) + "\n";
    s += "A = " + render_matrix(spec.A) + "\n";
    s += "b = " + render_vector(spec.b) + "\n";
    if (!spec.checks.empty()) {
        s += "checks = ";
        for (std::size_t k = 0; k < spec.checks.size(); ++k) s += (k ? "," : "") + spec.checks[k];
        s += "\n";
    }
    return s;
}

}  // namespace solnscope
