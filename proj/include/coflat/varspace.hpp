#pragma once

#include "coflat/errors.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coflat {

class VarSpace;
using VarSpacePtr = std::shared_ptr<const VarSpace>;

/// An ordered list of variable names fixing the coordinate model R^n.
/// Shared immutably; polynomials over the same space may be combined.
class VarSpace {
public:
    static VarSpacePtr make(std::vector<std::string> names);

    /// prefix "x", n = 3 gives x1, x2, x3.
    static VarSpacePtr numbered(const std::string& prefix, int n);

    int dim() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<int> index_of(std::string_view name) const;

    /// New space with extra trailing variables (formal pencil parameters).
    VarSpacePtr extended(const std::vector<std::string>& extra) const;

    friend bool same_space(const VarSpacePtr& a, const VarSpacePtr& b);

private:
    explicit VarSpace(std::vector<std::string> names) : names_(std::move(names)) {}
    std::vector<std::string> names_;
};

bool same_space(const VarSpacePtr& a, const VarSpacePtr& b);

/// Throws DimensionError unless both operands live on one space.
void require_same_space(const VarSpacePtr& a, const VarSpacePtr& b, const char* op);

} // namespace coflat
