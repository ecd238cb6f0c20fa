#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "heis/heisenberg.hpp"
#include "heis/numeric.hpp"

namespace heis::finite {

/**
 * The finite group H_n(Z/kZ), enumerated as indices 0 .. k^{2n+1} - 1.
 *
 * Indexing is mixed-radix base k with the x digits least significant, then
 * the y digits, then the t digit:
 *
 *     idx = sum_i x_i k^i  +  sum_i y_i k^{n+i}  +  t k^{2n}
 *
 * Consequences used throughout: index 0 is the identity, and the indices
 * below base_count() = k^{2n} are exactly the elements with t = 0, one per
 * coset of the center.  Iteration in index order is the fixed, documented
 * enumeration order.
 *
 * The object is a value (it stores only n, k and the digit weights), so
 * handles can copy it freely.
 */
class FiniteHeisenberg {
public:
    static constexpr std::size_t kDefaultCap = 1'000'000;

    // Builds H_n(Z/kZ); throws TooLargeError when k^{2n+1} exceeds the cap.
    static FiniteHeisenberg enumerate(int n, const Int& k,
                                      std::size_t cap = kDefaultCap);

    int dim() const { return n_; }
    std::int64_t modulus() const { return k_; }
    std::size_t order() const { return order_; }

    // Number of center cosets, k^{2n}; also the count of t = 0 elements.
    std::size_t base_count() const { return base_count_; }

    std::size_t identity() const { return 0; }
    std::size_t compose(std::size_t a, std::size_t b) const;
    std::size_t inverse(std::size_t a) const;

    // h * g * h^{-1} and g * h * g^{-1} * h^{-1}, built from compose/inverse.
    std::size_t conjugate(std::size_t g, std::size_t h) const;
    std::size_t commutator(std::size_t g, std::size_t h) const;

    HeisenbergPoint<Residue> point(std::size_t idx) const;
    std::size_t index_of(const HeisenbergPoint<Residue>& p) const;

    bool same_group(const FiniteHeisenberg& other) const {
        return n_ == other.n_ && k_ == other.k_;
    }

private:
    FiniteHeisenberg(int n, std::int64_t k);

    static constexpr int kMaxDim = 16;

    int n_;
    std::int64_t k_;
    std::size_t order_;
    std::size_t base_count_;
    std::vector<std::uint64_t> powk_; // k^0 .. k^{2n+1}
};

/**
 * A validated subgroup of a FiniteHeisenberg, held as a sorted index set.
 * Construction checks identity membership and closure under compose and
 * inverse, throwing InvalidSubgroupError otherwise, so a handle can always
 * be trusted downstream.
 */
class Subgroup {
public:
    Subgroup(FiniteHeisenberg group, std::vector<std::size_t> members,
             std::optional<std::vector<std::size_t>> generators = std::nullopt);

    const FiniteHeisenberg& group() const { return group_; }
    const std::vector<std::size_t>& members() const { return members_; }
    const std::optional<std::vector<std::size_t>>& generators() const {
        return generators_;
    }

    std::size_t order() const { return members_.size(); }
    bool contains(std::size_t idx) const {
        return idx < bitmap_.size() && bitmap_[idx];
    }

private:
    FiniteHeisenberg group_;
    std::vector<std::size_t> members_;
    std::optional<std::vector<std::size_t>> generators_;
    std::vector<bool> bitmap_;
};

// Named constructions.
Subgroup trivial_subgroup(const FiniteHeisenberg& G);
Subgroup whole_group(const FiniteHeisenberg& G);
Subgroup generated_by(const FiniteHeisenberg& G,
                      const std::vector<std::size_t>& generators);

// Image of the scaled lattice H_n(cZ) under reduction mod k: all points whose
// coordinates are multiples of gcd(c, k).
Subgroup lattice_image(const FiniteHeisenberg& G, const Int& c);

// Image of the dilated lattice delta_r(H_n(Z)) = r Z^n x r Z^n x r^2 Z.
Subgroup dilation_image(const FiniteHeisenberg& G, const Int& r);

// Exact center by exhaustive commutation scan with early exit on the first
// non-commuting witness.
Subgroup center_of(const FiniteHeisenberg& G);

// Center of the subgroup H as a group in its own right (candidates and
// probes both range over H).  At finite depth this can strictly contain the
// image of the infinite lattice's center; see quotient_center_by_commutator.
Subgroup center_of(const FiniteHeisenberg& G, const Subgroup& H);

// Closure of all pairwise commutators under the group operation.
Subgroup commutator_subgroup(const FiniteHeisenberg& G);
Subgroup commutator_subgroup(const FiniteHeisenberg& G, const Subgroup& H);

Subgroup intersect(const Subgroup& A, const Subgroup& B);

// |G| / |H|, cross-checked against a full left-coset enumeration.
Int subgroup_index(const FiniteHeisenberg& G, const Subgroup& H);

// Exhaustive conjugation test (one conjugator per center coset; central
// factors act trivially by inner automorphisms).
bool is_normal(const FiniteHeisenberg& G, const Subgroup& H);

// Whether H is normal as a subgroup of K (conjugators drawn from K only).
// Both handles must live in the same ambient group, and H must be contained
// in K; throws InvalidSubgroupError otherwise.
bool is_normal_in(const Subgroup& K, const Subgroup& H);

// Smallest normal subgroup of G containing H.
Subgroup normal_closure(const FiniteHeisenberg& G, const Subgroup& H);

/**
 * Order of the quotient (image of the center of H_n(kZ)) / (commutator
 * subgroup of the image of H_n(kZ)), computed inside H_n(Z/k^depth Z).
 *
 * The center image is computed as center_of(G) intersected with the lattice
 * image (the abstract center of the image subgroup is polluted at finite
 * depth by elements with coordinates divisible by k^{depth-1}, which do not
 * come from central elements of the infinite lattice).  The commutator
 * subgroup of the image equals the image of the infinite commutator subgroup
 * because the reduction kernel H_n(k^depth Z) already lies inside it when
 * depth >= 2.  Requires depth >= 3 so that both kZ and k^2 Z are resolved
 * nontrivially; the expected value of the quotient order is k.
 */
Int quotient_center_by_commutator(int n, const Int& k, int depth,
                                  std::size_t cap = FiniteHeisenberg::kDefaultCap);

} // namespace heis::finite
