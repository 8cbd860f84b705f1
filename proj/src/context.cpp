#include "covforge/context.hpp"

#include "covforge/error.hpp"

#include <cctype>

namespace covforge {

namespace {

void check_family_name(const std::string& name)
{
    if (name.empty()) {
        throw ContextError("empty family name");
    }
    for (char c : name) {
        if (!std::isalpha(static_cast<unsigned char>(c))) {
            throw ContextError("family names must be alphabetic: '" + name + "'");
        }
    }
}

} // namespace

VarFamily VarFamily::flat(std::string name, int first, int count)
{
    check_family_name(name);
    if (count < 0) {
        throw ContextError("negative family size");
    }
    VarFamily f;
    f.name_ = std::move(name);
    f.row_first_ = first;
    f.row_count_ = count;
    return f;
}

VarFamily VarFamily::grid(std::string name, int row_first, int row_count, int col_first, int col_count)
{
    check_family_name(name);
    if (row_count < 0 || col_count < 0) {
        throw ContextError("negative family size");
    }
    VarFamily f;
    f.name_ = std::move(name);
    f.grid_ = true;
    f.row_first_ = row_first;
    f.row_count_ = row_count;
    f.col_first_ = col_first;
    f.col_count_ = col_count;
    return f;
}

std::size_t VarFamily::size() const
{
    return grid_ ? static_cast<std::size_t>(row_count_) * static_cast<std::size_t>(col_count_)
                 : static_cast<std::size_t>(row_count_);
}

std::optional<std::size_t> VarFamily::local(int i) const
{
    if (grid_ || i < row_first_ || i >= row_first_ + row_count_) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(i - row_first_);
}

std::optional<std::size_t> VarFamily::local(int i, int j) const
{
    if (!grid_ || i < row_first_ || i >= row_first_ + row_count_ || j < col_first_ ||
        j >= col_first_ + col_count_) {
        return std::nullopt;
    }
    return static_cast<std::size_t>((i - row_first_) * col_count_ + (j - col_first_));
}

std::string VarFamily::var_name(std::size_t local) const
{
    if (!grid_) {
        return name_ + std::to_string(row_first_ + static_cast<int>(local));
    }
    const int i = row_first_ + static_cast<int>(local) / col_count_;
    const int j = col_first_ + static_cast<int>(local) % col_count_;
    return name_ + "_" + std::to_string(i) + "_" + std::to_string(j);
}

Context::Context(std::vector<VarFamily> families) : families_(std::move(families))
{
    for (std::size_t f = 0; f < families_.size(); ++f) {
        for (std::size_t g = 0; g < f; ++g) {
            if (families_[g].name() == families_[f].name()) {
                throw ContextError("duplicate family '" + families_[f].name() + "'");
            }
        }
        offsets_.push_back(names_.size());
        for (std::size_t k = 0; k < families_[f].size(); ++k) {
            names_.push_back(families_[f].var_name(k));
            owner_.push_back(f);
        }
    }
    for (std::size_t v = 0; v < names_.size(); ++v) {
        if (!by_name_.emplace(names_[v], v).second) {
            throw ContextError("ambiguous variable name '" + names_[v] + "'");
        }
    }
}

ContextPtr Context::make(std::vector<VarFamily> families)
{
    return ContextPtr(new Context(std::move(families)));
}

ContextPtr Context::empty()
{
    static const ContextPtr e = make({});
    return e;
}

ContextPtr Context::unite(const ContextPtr& a, const ContextPtr& b)
{
    if (same_context(a, b)) {
        return a;
    }
    std::vector<VarFamily> fams = a->families();
    for (const auto& f : b->families()) {
        bool found = false;
        for (const auto& g : a->families()) {
            if (g.name() == f.name()) {
                if (!(g == f)) {
                    throw ContextError("family '" + f.name() + "' has incompatible shapes");
                }
                found = true;
            }
        }
        if (!found) {
            fams.push_back(f);
        }
    }
    if (fams.size() == a->families().size()) {
        return a;
    }
    return make(std::move(fams));
}

ContextPtr Context::without(std::string_view family) const
{
    std::vector<VarFamily> fams;
    for (const auto& f : families_) {
        if (f.name() != family) {
            fams.push_back(f);
        }
    }
    return make(std::move(fams));
}

bool Context::has_family(std::string_view family) const
{
    for (const auto& f : families_) {
        if (f.name() == family) {
            return true;
        }
    }
    return false;
}

const VarFamily& Context::family(std::string_view family) const
{
    for (const auto& f : families_) {
        if (f.name() == family) {
            return f;
        }
    }
    throw ContextError("unknown family '" + std::string(family) + "'");
}

std::size_t Context::family_offset(std::string_view family) const
{
    for (std::size_t f = 0; f < families_.size(); ++f) {
        if (families_[f].name() == family) {
            return offsets_[f];
        }
    }
    throw ContextError("unknown family '" + std::string(family) + "'");
}

std::size_t Context::var(std::string_view fam, int i) const
{
    const auto loc = family(fam).local(i);
    if (!loc) {
        throw ContextError("index " + std::to_string(i) + " out of range for family '" + std::string(fam) + "'");
    }
    return family_offset(fam) + *loc;
}

std::size_t Context::var(std::string_view fam, int i, int j) const
{
    const auto loc = family(fam).local(i, j);
    if (!loc) {
        throw ContextError("index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range for family '" +
                           std::string(fam) + "'");
    }
    return family_offset(fam) + *loc;
}

std::optional<std::size_t> Context::find(std::string_view var_name) const
{
    const auto it = by_name_.find(std::string(var_name));
    if (it == by_name_.end()) {
        return std::nullopt;
    }
    return it->second;
}

} // namespace covforge
