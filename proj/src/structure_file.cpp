#include "coflat/structure_file.hpp"

#include "coflat/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace coflat {

namespace {

// ---- TOML subset ----

struct TomlParser {
    const std::string& s;
    std::size_t i = 0;

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        std::size_t line = 1, col = 1;
        for (std::size_t k = 0; k < at && k < s.size(); ++k) {
            if (s[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("structure file: " + msg + " at line " + std::to_string(line) +
                             ", column " + std::to_string(col),
                         at);
    }

    bool eof() const { return i >= s.size(); }
    char peek() const { return eof() ? '\0' : s[i]; }

    // Horizontal whitespace and comments; newlines only when asked, so that
    // key/value lines keep their one-line shape while arrays may wrap.
    void skip(bool over_newlines) {
        while (!eof()) {
            char c = s[i];
            if (c == '#') {
                while (!eof() && s[i] != '\n') ++i;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++i;
            } else if (c == '\n' && over_newlines) {
                ++i;
            } else {
                break;
            }
        }
    }

    void expect_line_end() {
        skip(false);
        if (!eof() && s[i] != '\n') fail("unexpected trailing content", i);
    }

    std::string read_bare_key() {
        std::size_t start = i;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        if (i == start) fail("expected a key", start);
        return s.substr(start, i - start);
    }

    std::string read_string() {
        std::size_t start = i;
        ++i; // opening quote
        std::string out;
        while (true) {
            if (eof() || s[i] == '\n') fail("unterminated string", start);
            char c = s[i++];
            if (c == '"') return out;
            if (c == '\\') {
                if (eof()) fail("unterminated string", start);
                char e = s[i++];
                if (e == '"' || e == '\\')
                    out.push_back(e);
                else
                    fail("unsupported escape in string", i - 1);
            } else {
                out.push_back(c);
            }
        }
    }

    Json read_value() {
        skip(true);
        if (eof()) fail("expected a value", i);
        char c = s[i];
        if (c == '"') return Json(read_string());
        if (c == '[') {
            ++i;
            Json arr = Json::array();
            skip(true);
            if (peek() == ']') {
                ++i;
                return arr;
            }
            while (true) {
                arr.push_back(read_value());
                skip(true);
                if (peek() == ',') {
                    ++i;
                    skip(true);
                    if (peek() == ']') { // trailing comma
                        ++i;
                        return arr;
                    }
                    continue;
                }
                if (peek() == ']') {
                    ++i;
                    return arr;
                }
                fail("expected ',' or ']' in array", i);
            }
        }
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            if (c == '-') ++i;
            while (!eof() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (i == start + (c == '-' ? 1u : 0u)) fail("expected digits", start);
            if (!eof() && (s[i] == '.' || s[i] == 'e' || s[i] == 'E' || s[i] == '/'))
                fail("only integers are bare numbers; write rationals and floats as strings",
                     start);
            return Json(static_cast<std::int64_t>(std::stoll(s.substr(start, i - start))));
        }
        fail("unsupported value (expected string, integer, or array)", i);
    }

    Json parse() {
        Json root = Json::object();
        Json* cur = nullptr;
        std::string cur_name;
        while (true) {
            skip(true);
            if (eof()) return root;
            if (s[i] == '[') {
                std::size_t at = i;
                ++i;
                skip(false);
                std::string name = read_bare_key();
                skip(false);
                if (peek() != ']') fail("expected ']' after section name", i);
                ++i;
                expect_line_end();
                if (root.contains(name)) fail("duplicate section [" + name + "]", at);
                root[name] = Json::object();
                cur = &root[name];
                cur_name = name;
                continue;
            }
            std::size_t at = i;
            std::string key = read_bare_key();
            if (cur == nullptr) fail("key '" + key + "' appears before any [section]", at);
            skip(false);
            if (peek() != '=') fail("expected '=' after key '" + key + "'", i);
            ++i;
            Json value = read_value();
            expect_line_end();
            if (cur->contains(key))
                fail("duplicate key '" + key + "' in [" + cur_name + "]", at);
            (*cur)[key] = std::move(value);
        }
    }
};

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("structure file: ") + e.what(), e.byte);
    }
}

// ---- typed access ----

[[noreturn]] void bad(const std::string& msg) { throw StructureError("structure file: " + msg); }

const Json& require(const Json& sec, const std::string& section, const char* key) {
    auto it = sec.find(key);
    if (it == sec.end()) bad("[" + section + "] is missing key '" + key + "'");
    return *it;
}

int require_int(const Json& sec, const std::string& section, const char* key) {
    const Json& v = require(sec, section, key);
    if (!v.is_number_integer()) bad("[" + section + "]." + key + " must be an integer");
    return v.get<int>();
}

std::string require_str(const Json& sec, const std::string& section, const char* key) {
    const Json& v = require(sec, section, key);
    if (!v.is_string()) bad("[" + section + "]." + key + " must be a string");
    return v.get<std::string>();
}

void check_keys(const Json& sec, const std::string& section,
                std::initializer_list<const char*> allowed) {
    for (auto it = sec.begin(); it != sec.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) bad("unknown key '" + it.key() + "' in [" + section + "]");
    }
}

Rational rational_at(const Json& v, const std::string& ctx) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (!v.is_string()) bad(ctx + " must be a rational string or integer");
    try {
        return Rational::parse(v.get<std::string>());
    } catch (const Error& e) {
        bad(ctx + ": " + e.what());
    }
}

QVector rational_vector(const Json& v, const std::string& ctx) {
    if (!v.is_array()) bad(ctx + " must be an array");
    QVector out;
    for (std::size_t t = 0; t < v.size(); ++t)
        out.push_back(rational_at(v[t], ctx + "[" + std::to_string(t + 1) + "]"));
    return out;
}

QMatrix rational_matrix(const Json& v, const std::string& ctx) {
    if (!v.is_array() || v.empty()) bad(ctx + " must be a nonempty array of rows");
    QMatrix out;
    for (std::size_t r = 0; r < v.size(); ++r) {
        out.push_back(rational_vector(v[r], ctx + "[" + std::to_string(r + 1) + "]"));
        if (out.back().size() != out.front().size()) bad(ctx + " has ragged rows");
    }
    return out;
}

Polynomial poly_at(const Json& v, const VarSpacePtr& space, const std::string& ctx) {
    if (!v.is_string()) bad(ctx + " must be a polynomial string");
    try {
        return Polynomial::parse(space, v.get<std::string>());
    } catch (const Error& e) {
        bad(ctx + ": " + e.what());
    }
}

std::vector<std::vector<Polynomial>> poly_matrix(const Json& v, const VarSpacePtr& space, int rows,
                                                 int cols, const std::string& ctx) {
    if (!v.is_array() || static_cast<int>(v.size()) != rows)
        bad(ctx + " must have " + std::to_string(rows) + " rows");
    std::vector<std::vector<Polynomial>> out;
    for (int r = 0; r < rows; ++r) {
        const Json& row = v[static_cast<std::size_t>(r)];
        std::string rctx = ctx + "[" + std::to_string(r + 1) + "]";
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            bad(rctx + " must have " + std::to_string(cols) + " entries");
        std::vector<Polynomial> prow;
        for (int c = 0; c < cols; ++c)
            prow.push_back(poly_at(row[static_cast<std::size_t>(c)], space,
                                   rctx + "[" + std::to_string(c + 1) + "]"));
        out.push_back(std::move(prow));
    }
    return out;
}

PartialAnchor build_anchor(const Json& sec, const std::string& name, const VarSpacePtr& space) {
    check_keys(sec, name, {"dimension", "coflat", "images"});
    const int n = space->dim();
    if (sec.contains("dimension") && require_int(sec, name, "dimension") != n)
        bad("[" + name + "].dimension disagrees with the primary subject (" + std::to_string(n) +
            ")");
    CoflatBasis basis = sec.contains("coflat")
                            ? CoflatBasis(space, rational_matrix(sec["coflat"], name + ".coflat"))
                            : CoflatBasis::full_dual(space);
    const Json& imgs = require(sec, name, "images");
    auto rows = poly_matrix(imgs, space, basis.k(), n, name + ".images");
    std::vector<VecField> images;
    for (auto& r : rows) images.push_back(VecField{space, std::move(r)});
    return PartialAnchor(basis, std::move(images));
}

LieAlgebraSpec build_lie_algebra(const Json& sec) {
    check_keys(sec, "lie_algebra", {"dimension", "constants"});
    int n = require_int(sec, "lie_algebra", "dimension");
    const Json& cs = require(sec, "lie_algebra", "constants");
    if (!cs.is_array()) bad("[lie_algebra].constants must be an array of [i, j, k, c] entries");
    std::vector<std::tuple<int, int, int, Rational>> entries;
    for (std::size_t t = 0; t < cs.size(); ++t) {
        std::string ctx = "lie_algebra.constants[" + std::to_string(t + 1) + "]";
        const Json& e = cs[t];
        if (!e.is_array() || e.size() != 4) bad(ctx + " must be [i, j, k, c]");
        int idx[3];
        for (int q = 0; q < 3; ++q) {
            const Json& v = e[static_cast<std::size_t>(q)];
            if (!v.is_number_integer()) bad(ctx + " indices must be integers");
            idx[q] = v.get<int>();
            if (idx[q] < 1 || idx[q] > n) bad(ctx + " index " + std::to_string(idx[q]) +
                                              " outside 1.." + std::to_string(n));
        }
        // File indices are 1-based like the coordinate names x1..xn.
        entries.emplace_back(idx[0] - 1, idx[1] - 1, idx[2] - 1, rational_at(e[3], ctx + ".c"));
    }
    return LieAlgebraSpec(n, entries);
}

} // namespace

Json parse_structure_text(const std::string& text) {
    TomlParser p{text};
    return p.parse();
}

std::string canonical_dump(const Json& tree) { return tree.dump(); }

std::string structure_digest(const Json& tree) {
    std::string text = canonical_dump(tree);
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int k = 15; k >= 0; --k) {
        out[static_cast<std::size_t>(k)] = hex[h & 0xF];
        h >>= 4;
    }
    return out;
}

StructureFile load_structure_text(const std::string& text, bool is_json) {
    StructureFile out;
    out.tree = is_json ? parse_json_text(text) : parse_structure_text(text);
    if (!out.tree.is_object()) bad("top level must be an object of sections");
    out.digest = structure_digest(out.tree);

    static const char* known[] = {"anchor",  "second_anchor", "nijenhuis", "omega", "lie_algebra",
                                  "chain",   "restrict",      "project",   "kdv"};
    for (auto it = out.tree.begin(); it != out.tree.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) ok = true;
        if (!ok) bad("unknown section [" + it.key() + "]");
        if (!it.value().is_object()) bad("section [" + it.key() + "] must hold key = value pairs");
    }

    int subjects = int(out.has("anchor")) + int(out.has("lie_algebra")) + int(out.has("kdv"));
    if (subjects != 1)
        bad("exactly one of [anchor], [lie_algebra], [kdv] must be present as the subject");

    if (out.has("kdv")) {
        const Json& sec = out.tree["kdv"];
        check_keys(sec, "kdv", {"n", "dt", "steps", "u0"});
        KdvParams p;
        if (sec.contains("n")) p.n = require_int(sec, "kdv", "n");
        if (sec.contains("dt")) p.dt = require_str(sec, "kdv", "dt");
        if (sec.contains("steps")) p.steps = require_int(sec, "kdv", "steps");
        if (sec.contains("u0")) p.u0 = require_str(sec, "kdv", "u0");
        out.kdv = std::move(p);
        for (const char* k : {"second_anchor", "nijenhuis", "omega", "chain", "restrict",
                              "project"})
            if (out.has(k)) bad(std::string("[") + k + "] does not apply to a [kdv] subject");
        return out;
    }

    if (out.has("lie_algebra")) {
        out.lie_algebra = build_lie_algebra(out.tree["lie_algebra"]);
        out.space = VarSpace::numbered("x", out.lie_algebra->dim());
        out.anchor = lp_anchor(*out.lie_algebra, out.space);
    } else {
        const Json& sec = out.tree["anchor"];
        int n = require_int(sec, "anchor", "dimension");
        if (n < 1) bad("[anchor].dimension must be positive");
        out.space = VarSpace::numbered("x", n);
        out.anchor = build_anchor(sec, "anchor", out.space);
    }
    const int n = out.space->dim();

    if (out.has("second_anchor"))
        out.second_anchor = build_anchor(out.tree["second_anchor"], "second_anchor", out.space);

    if (out.has("nijenhuis")) {
        const Json& sec = out.tree["nijenhuis"];
        check_keys(sec, "nijenhuis", {"matrix"});
        out.nijenhuis = OneOneTensor{
            out.space, poly_matrix(require(sec, "nijenhuis", "matrix"), out.space, n, n,
                                   "nijenhuis.matrix")};
    }

    if (out.has("omega")) {
        const Json& sec = out.tree["omega"];
        check_keys(sec, "omega", {"matrix"});
        out.omega = TwoForm(out.space, poly_matrix(require(sec, "omega", "matrix"), out.space, n,
                                                   n, "omega.matrix"));
    }

    if (out.has("chain")) {
        if (!out.lie_algebra) bad("[chain] requires a [lie_algebra] subject");
        const Json& sec = out.tree["chain"];
        check_keys(sec, "chain", {"m0", "casimir", "depth"});
        ChainParams p;
        p.m0 = rational_vector(require(sec, "chain", "m0"), "chain.m0");
        if (static_cast<int>(p.m0.size()) != n) bad("chain.m0 must have dimension entries");
        if (sec.contains("casimir")) p.casimir = require_str(sec, "chain", "casimir");
        if (sec.contains("depth")) p.depth = require_int(sec, "chain", "depth");
        out.chain = std::move(p);
    }

    if (out.has("restrict")) {
        const Json& sec = out.tree["restrict"];
        check_keys(sec, "restrict", {"A", "x0"});
        RestrictParams p;
        p.a = rational_matrix(require(sec, "restrict", "A"), "restrict.A");
        p.x0 = rational_vector(require(sec, "restrict", "x0"), "restrict.x0");
        if (static_cast<int>(p.a.size()) != n) bad("restrict.A must have dimension rows");
        if (static_cast<int>(p.x0.size()) != n) bad("restrict.x0 must have dimension entries");
        out.restrict_to = std::move(p);
    }

    if (out.has("project")) {
        const Json& sec = out.tree["project"];
        check_keys(sec, "project", {"B"});
        ProjectParams p;
        p.b = rational_matrix(require(sec, "project", "B"), "project.B");
        if (p.b.empty() || static_cast<int>(p.b.front().size()) != n)
            bad("project.B must have dimension columns");
        out.project = std::move(p);
    }

    return out;
}

StructureFile load_structure(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StructureError("cannot read structure file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    bool is_json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
    return load_structure_text(buf.str(), is_json);
}

} // namespace coflat
