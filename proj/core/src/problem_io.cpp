#include "trieig/problem_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace trieig {

namespace {

using nlohmann::json;

std::string line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] void fail(const std::string& filename, const std::string& where, const std::string& what) {
    throw ParseError(filename + ": " + where + ": " + what);
}

Interval read_pair(const json& node, const std::string& filename, const std::string& field) {
    if (!node.is_array() || node.size() != 2 || !node[0].is_number() || !node[1].is_number())
        fail(filename, field, "expected a [lo, hi] pair of numbers");
    const double lo = node[0].get<double>();
    const double hi = node[1].get<double>();
    if (!std::isfinite(lo) || !std::isfinite(hi)) fail(filename, field, "endpoints must be finite");
    if (lo > hi) fail(filename, field, "lo > hi");
    return Interval(lo, hi);
}

}  // namespace

ProblemFile parse_problem_json(const std::string& text, const std::string& filename) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(filename, line_col(text, e.byte > 0 ? e.byte - 1 : 0), e.what());
    }
    if (!doc.is_object()) fail(filename, "top level", "expected a JSON object");
    if (!doc.contains("n") || !doc["n"].is_number_integer()) fail(filename, "field 'n'", "missing or not an integer");
    const long long n = doc["n"].get<long long>();
    if (n < 1 || n > 10'000'000) fail(filename, "field 'n'", "order out of range");
    if (!doc.contains("a") || !doc["a"].is_array()) fail(filename, "field 'a'", "missing or not an array");
    if (!doc.contains("b") || !doc["b"].is_array()) fail(filename, "field 'b'", "missing or not an array");
    if (doc["a"].size() != static_cast<std::size_t>(n))
        fail(filename, "field 'a'", "expected n = " + std::to_string(n) + " pairs, got " +
                                        std::to_string(doc["a"].size()));
    if (doc["b"].size() != static_cast<std::size_t>(n - 1))
        fail(filename, "field 'b'", "expected n-1 = " + std::to_string(n - 1) + " pairs, got " +
                                        std::to_string(doc["b"].size()));

    std::vector<Interval> a, b;
    a.reserve(static_cast<std::size_t>(n));
    b.reserve(static_cast<std::size_t>(n - 1));
    for (std::size_t i = 0; i < doc["a"].size(); ++i)
        a.push_back(read_pair(doc["a"][i], filename, "a[" + std::to_string(i) + "]"));
    for (std::size_t i = 0; i < doc["b"].size(); ++i)
        b.push_back(read_pair(doc["b"][i], filename, "b[" + std::to_string(i) + "]"));

    ProblemFile out;
    out.matrix = SymTriInterval(std::move(a), std::move(b));
    if (doc.contains("name") && doc["name"].is_string()) out.name = doc["name"].get<std::string>();
    if (doc.contains("comment") && doc["comment"].is_string()) out.comment = doc["comment"].get<std::string>();
    return out;
}

ProblemFile parse_problem_csv(const std::string& text, const std::string& filename) {
    std::vector<Interval> a, b;
    std::istringstream stream(text);
    std::string line;
    std::size_t lineno = 0;
    bool header_allowed = true;
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> row_lines;

    while (std::getline(stream, line)) {
        ++lineno;
        std::string trimmed = line;
        while (!trimmed.empty() && (trimmed.back() == '\r' || std::isspace(static_cast<unsigned char>(trimmed.back()))))
            trimmed.pop_back();
        if (trimmed.empty() || trimmed[0] == '#') continue;

        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(trimmed);
        while (std::getline(ls, field, ',')) fields.push_back(field);

        std::vector<double> values;
        bool numeric = true;
        for (const std::string& f : fields) {
            if (f.find_first_not_of(" \t") == std::string::npos) continue;  // empty cell
            try {
                std::size_t used = 0;
                const double v = std::stod(f, &used);
                while (used < f.size() && std::isspace(static_cast<unsigned char>(f[used]))) ++used;
                if (used != f.size()) throw std::invalid_argument("trailing characters");
                values.push_back(v);
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (header_allowed) {
                header_allowed = false;
                continue;
            }
            fail(filename, "line " + std::to_string(lineno), "non-numeric field");
        }
        header_allowed = false;
        if (values.size() != 4 && values.size() != 2)
            fail(filename, "line " + std::to_string(lineno),
                 "expected 4 values (a_lo,a_hi,b_lo,b_hi) or 2 on the final row, got " +
                     std::to_string(values.size()));
        rows.push_back(std::move(values));
        row_lines.push_back(lineno);
    }

    if (rows.empty()) fail(filename, "end of file", "no data rows");
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::string where = "line " + std::to_string(row_lines[r]);
        const std::vector<double>& v = rows[r];
        if (r + 1 < rows.size() && v.size() != 4)
            fail(filename, where, "only the final row may omit the b columns");
        if (!std::isfinite(v[0]) || !std::isfinite(v[1])) fail(filename, where, "endpoints must be finite");
        if (v[0] > v[1]) fail(filename, where, "a_lo > a_hi");
        a.push_back(Interval(v[0], v[1]));
        if (v.size() == 4) {
            if (r + 1 == rows.size()) fail(filename, where, "final row must not carry b columns");
            if (!std::isfinite(v[2]) || !std::isfinite(v[3])) fail(filename, where, "endpoints must be finite");
            if (v[2] > v[3]) fail(filename, where, "b_lo > b_hi");
            b.push_back(Interval(v[2], v[3]));
        }
    }
    if (b.size() + 1 != a.size())
        fail(filename, "end of file", "expected n-1 off-diagonal rows before the final diagonal row");

    ProblemFile out;
    out.matrix = SymTriInterval(std::move(a), std::move(b));
    return out;
}

ProblemFile load_problem(const std::string& path, bool csv) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return csv ? parse_problem_csv(buf.str(), path) : parse_problem_json(buf.str(), path);
}

std::string problem_to_json(const ProblemFile& problem) {
    json doc;
    const SymTriInterval& m = problem.matrix;
    doc["n"] = m.order();
    json a = json::array(), b = json::array();
    for (int i = 0; i < m.order(); ++i) a.push_back({m.diag(i).lo, m.diag(i).hi});
    for (int i = 0; i + 1 < m.order(); ++i) b.push_back({m.off(i).lo, m.off(i).hi});
    doc["a"] = std::move(a);
    doc["b"] = std::move(b);
    if (!problem.name.empty()) doc["name"] = problem.name;
    if (!problem.comment.empty()) doc["comment"] = problem.comment;
    return doc.dump(2);
}

std::string format_directed(double value, int decimals, bool round_up) {
    const double scale = std::pow(10.0, decimals);
    double grid = round_up ? std::ceil(value * scale) : std::floor(value * scale);
    double result = grid / scale;
    // The product may round across a grid line; step once if the direction
    // was violated.
    if (round_up && result < value) result = (grid + 1.0) / scale;
    if (!round_up && result > value) result = (grid - 1.0) / scale;

    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, result);
    return std::string(buf);
}

}  // namespace trieig
