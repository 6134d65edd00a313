#pragma once

#include "coflat/fields.hpp"
#include "coflat/liepoisson.hpp"
#include "coflat/partial.hpp"
#include "coflat/qlinalg.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace coflat {

using Json = nlohmann::json;

/// Parses the TOML subset used by structure files into the same tree a JSON
/// file yields, so both renderings canonicalize to one digest. Supported:
/// `[section]` headers, `key = value` with string / integer / (nested) array
/// values, `#` comments, arrays spanning lines. Errors carry line:column.
Json parse_structure_text(const std::string& text);

/// Canonical serialization: sorted keys, no insignificant whitespace.
std::string canonical_dump(const Json& tree);

/// FNV-1a 64-bit digest of the canonical serialization, fixed-width hex.
std::string structure_digest(const Json& tree);

struct ChainParams {
    QVector m0;
    std::string casimir = "auto-killing"; // or an explicit polynomial string
    int depth = -1;                       // -1: cap at the Casimir degree
};

struct RestrictParams {
    QMatrix a;  // n x m, columns span the subspace directions
    QVector x0; // base point
};

struct ProjectParams {
    QMatrix b; // m x n quotient map
};

struct KdvParams {
    int n = 64;
    std::string dt = "1e-4";
    int steps = 1000;
    std::string u0 = "cos"; // cos | sin | small_cos | zero
};

/// A structure file with its sections materialized into library values.
/// Exactly one of {anchor, lie_algebra, kdv} is the primary subject; the
/// remaining sections attach to the primary subject's variable space.
struct StructureFile {
    Json tree;
    std::string digest;

    VarSpacePtr space; // empty for a kdv subject
    std::optional<PartialAnchor> anchor;
    std::optional<PartialAnchor> second_anchor;
    std::optional<OneOneTensor> nijenhuis;
    std::optional<TwoForm> omega;
    std::optional<LieAlgebraSpec> lie_algebra;
    std::optional<ChainParams> chain;
    std::optional<RestrictParams> restrict_to;
    std::optional<ProjectParams> project;
    std::optional<KdvParams> kdv;

    bool has(const char* section) const { return tree.contains(section); }
};

/// Reads a `.json` file as an equivalent tree, anything else as TOML, and
/// materializes every section. Throws ParseError for syntax problems and
/// StructureError for semantic ones (missing keys, ragged matrices, unknown
/// variables, conflicting or missing primary subject).
StructureFile load_structure(const std::string& path);

/// Same, from in-memory text. Tests use this to compare renderings.
StructureFile load_structure_text(const std::string& text, bool is_json);

} // namespace coflat
