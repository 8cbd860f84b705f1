#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace covforge {

/// A named block of variables. Flat families are printed as name+index
/// (a0, x1); grid families as name_i_j (y_0_1).
class VarFamily {
public:
    static VarFamily flat(std::string name, int first, int count);
    static VarFamily grid(std::string name, int row_first, int row_count, int col_first, int col_count);

    const std::string& name() const { return name_; }
    bool is_grid() const { return grid_; }
    std::size_t size() const;

    int first() const { return row_first_; }
    int count() const { return row_count_; }
    int col_first() const { return col_first_; }
    int col_count() const { return col_count_; }

    /// Local position of flat index i (or grid index (i,j)); nullopt when out of range.
    std::optional<std::size_t> local(int i) const;
    std::optional<std::size_t> local(int i, int j) const;

    std::string var_name(std::size_t local) const;

    bool operator==(const VarFamily& other) const = default;

private:
    std::string name_;
    bool grid_ = false;
    int row_first_ = 0;
    int row_count_ = 0;
    int col_first_ = 0;
    int col_count_ = 0;
};

class Context;
using ContextPtr = std::shared_ptr<const Context>;

/// Immutable ordered list of variable families. Variables are numbered
/// consecutively across families in declaration order.
class Context {
public:
    static ContextPtr make(std::vector<VarFamily> families);
    static ContextPtr empty();

    /// Families of `a` followed by the families of `b` not already present.
    /// Same-named families must agree exactly.
    static ContextPtr unite(const ContextPtr& a, const ContextPtr& b);

    /// Copy with one family dropped.
    ContextPtr without(std::string_view family) const;

    const std::vector<VarFamily>& families() const { return families_; }
    std::size_t num_vars() const { return names_.size(); }

    bool has_family(std::string_view family) const;
    const VarFamily& family(std::string_view family) const;
    std::size_t family_offset(std::string_view family) const;

    std::size_t var(std::string_view family, int i) const;
    std::size_t var(std::string_view family, int i, int j) const;
    std::optional<std::size_t> find(std::string_view var_name) const;
    const std::string& var_name(std::size_t v) const { return names_.at(v); }

    /// Index of the family owning variable v.
    std::size_t family_of(std::size_t v) const { return owner_.at(v); }

    bool operator==(const Context& other) const { return families_ == other.families_; }

private:
    explicit Context(std::vector<VarFamily> families);

    std::vector<VarFamily> families_;
    std::vector<std::size_t> offsets_;
    std::vector<std::string> names_;
    std::vector<std::size_t> owner_;
    std::unordered_map<std::string, std::size_t> by_name_;
};

inline bool same_context(const ContextPtr& a, const ContextPtr& b)
{
    return a == b || (a && b && *a == *b);
}

} // namespace covforge
