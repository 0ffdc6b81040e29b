#pragma once

#include "relcheck/category.hpp"

#include <map>
#include <string>
#include <vector>

namespace relcheck {

// A finite category given by explicit tables. Morphism ids are dense and
// Arrow::code is the id.
class FiniteCategory : public Category {
public:
    struct Morphism {
        std::string name;
        int src = 0;
        int tgt = 0;
    };

    FiniteCategory() = default;

    int add_object(std::string name);
    int add_morphism(std::string name, int src, int tgt);
    void set_identity(int object, int morphism);
    void set_composite(int g, int f, int h);  // g o f = h

    // Checks totality on composable pairs, unit laws and associativity.
    // Returns an empty string when valid, else a diagnostic.
    std::string validate() const;

    int object_count() const { return static_cast<int>(object_names_.size()); }
    int morphism_count() const { return static_cast<int>(morphisms_.size()); }
    const Morphism& morphism(int id) const;
    Arrow arrow(int id) const;
    int id(const Arrow& f) const;
    int identity_id(int object) const;
    // -1 when undefined.
    int composite_id(int g, int f) const;
    std::optional<int> find_object(std::string_view name) const;
    std::optional<int> find_morphism(std::string_view name) const;

    std::vector<int> objects() const override;
    Arrow identity(int x) const override;
    Arrow compose(const Arrow& g, const Arrow& f) const override;
    std::vector<Arrow> hom(int a, int b) const override;
    std::uint64_t hom_count(int a, int b) const override;
    bool valid(const Arrow& f) const override;
    std::string object_name(int x) const override;
    std::string arrow_name(const Arrow& f) const override;
    std::optional<Arrow> parse_arrow(std::string_view text) const override;
    std::optional<int> parse_object(std::string_view text) const override;

private:
    void ensure_tables() const;

    std::vector<std::string> object_names_;
    std::vector<Morphism> morphisms_;
    std::vector<int> identities_;
    std::map<std::pair<int, int>, int> composites_;
    std::map<std::string, int, std::less<>> object_index_;
    std::map<std::string, int, std::less<>> morphism_index_;

    // Dense caches rebuilt lazily after mutation.
    mutable bool dirty_ = true;
    mutable std::vector<int> table_;
    mutable std::vector<std::vector<int>> homs_;
};

// The poset 0 <= 1 <= ... <= n-1 as a category (objects named a, b, c, ...).
FiniteCategory chain_poset(int n);

}  // namespace relcheck
