#include "heis/finite_group.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>
#include <string>

namespace heis::finite {

namespace {

void check_same_group(const FiniteHeisenberg& G, const Subgroup& H) {
    if (!G.same_group(H.group())) {
        throw InvalidSubgroupError(
            "subgroup belongs to a different group (n or k mismatch)");
    }
}

// Worklist closure under the group operation (and optionally conjugation by
// every center-coset representative).  When an element is popped, products
// with all previously accepted members are enqueued in both orders, so for
// any accepted pair the later pop sees the earlier member: the final set is
// closed.  Conjugating by the t = 0 representatives covers all inner
// automorphisms because central factors drop out of h g h^{-1}.
std::vector<std::size_t> close_under(const FiniteHeisenberg& G,
                                     const std::vector<std::size_t>& seeds,
                                     bool under_conjugation) {
    std::vector<bool> seen(G.order(), false);
    std::vector<std::size_t> members;
    std::deque<std::size_t> queue(seeds.begin(), seeds.end());
    queue.push_front(G.identity());
    while (!queue.empty()) {
        const std::size_t g = queue.front();
        queue.pop_front();
        if (seen[g]) {
            continue;
        }
        seen[g] = true;
        members.push_back(g);
        for (const std::size_t m : members) {
            const std::size_t gm = G.compose(g, m);
            if (!seen[gm]) {
                queue.push_back(gm);
            }
            const std::size_t mg = G.compose(m, g);
            if (!seen[mg]) {
                queue.push_back(mg);
            }
        }
        const std::size_t inv = G.inverse(g);
        if (!seen[inv]) {
            queue.push_back(inv);
        }
        if (under_conjugation) {
            for (std::size_t c = 0; c < G.base_count(); ++c) {
                const std::size_t conj = G.conjugate(g, c);
                if (!seen[conj]) {
                    queue.push_back(conj);
                }
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

// Distinct t = 0 representatives of the members' center cosets.
std::vector<std::size_t> distinct_bases(const FiniteHeisenberg& G,
                                        const std::vector<std::size_t>& members) {
    std::vector<bool> seen(G.base_count(), false);
    std::vector<std::size_t> bases;
    for (const std::size_t m : members) {
        const std::size_t b = m % G.base_count();
        if (!seen[b]) {
            seen[b] = true;
            bases.push_back(b);
        }
    }
    return bases;
}

Subgroup close_commutators(const FiniteHeisenberg& G,
                           const std::vector<std::size_t>& bases) {
    std::vector<bool> seen(G.order(), false);
    std::vector<std::size_t> seeds;
    for (const std::size_t a : bases) {
        for (const std::size_t b : bases) {
            const std::size_t c = G.commutator(a, b);
            if (!seen[c]) {
                seen[c] = true;
                seeds.push_back(c);
            }
        }
    }
    // Sequence the closure before handing the seeds over as generators.
    std::vector<std::size_t> closed =
        close_under(G, seeds, /*under_conjugation=*/false);
    return Subgroup(G, std::move(closed), std::move(seeds));
}

} // namespace

FiniteHeisenberg::FiniteHeisenberg(int n, std::int64_t k) : n_(n), k_(k) {
    powk_.resize(static_cast<std::size_t>(2 * n_ + 2));
    powk_[0] = 1;
    for (std::size_t j = 1; j < powk_.size(); ++j) {
        powk_[j] = powk_[j - 1] * static_cast<std::uint64_t>(k_);
    }
    base_count_ = powk_[static_cast<std::size_t>(2 * n_)];
    order_ = powk_[static_cast<std::size_t>(2 * n_ + 1)];
}

FiniteHeisenberg FiniteHeisenberg::enumerate(int n, const Int& k,
                                             std::size_t cap) {
    if (n < 1 || n > kMaxDim) {
        throw TooLargeError("dimension must be between 1 and " +
                            std::to_string(kMaxDim));
    }
    if (k < 2) {
        throw InvalidRadixError("modulus must be >= 2, got " + format_int(k));
    }
    const Int total = pow_int(k, static_cast<unsigned long>(2 * n + 1));
    if (total > Int(static_cast<unsigned long>(cap))) {
        throw TooLargeError("group order " + format_int(total) +
                            " exceeds the enumeration cap " +
                            std::to_string(cap));
    }
    return FiniteHeisenberg(n, k.get_si());
}

std::size_t FiniteHeisenberg::compose(std::size_t a, std::size_t b) const {
    const auto uk = static_cast<std::uint64_t>(k_);
    std::uint64_t qa = a;
    std::uint64_t qb = b;
    std::uint64_t out = 0;
    std::uint64_t cross = 0;
    std::array<std::uint64_t, kMaxDim> ax{};
    for (int i = 0; i < n_; ++i) {
        const std::uint64_t da = qa % uk;
        const std::uint64_t db = qb % uk;
        qa /= uk;
        qb /= uk;
        ax[static_cast<std::size_t>(i)] = da;
        out += ((da + db) % uk) * powk_[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < n_; ++i) {
        const std::uint64_t da = qa % uk;
        const std::uint64_t db = qb % uk;
        qa /= uk;
        qb /= uk;
        cross = (cross + ax[static_cast<std::size_t>(i)] * db) % uk;
        out += ((da + db) % uk) * powk_[static_cast<std::size_t>(n_ + i)];
    }
    out += ((qa + qb + cross) % uk) * powk_[static_cast<std::size_t>(2 * n_)];
    return out;
}

std::size_t FiniteHeisenberg::inverse(std::size_t a) const {
    const auto uk = static_cast<std::uint64_t>(k_);
    std::uint64_t qa = a;
    std::uint64_t out = 0;
    std::uint64_t cross = 0;
    std::array<std::uint64_t, kMaxDim> ax{};
    for (int i = 0; i < n_; ++i) {
        const std::uint64_t da = qa % uk;
        qa /= uk;
        ax[static_cast<std::size_t>(i)] = da;
        out += ((uk - da) % uk) * powk_[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < n_; ++i) {
        const std::uint64_t db = qa % uk;
        qa /= uk;
        cross = (cross + ax[static_cast<std::size_t>(i)] * db) % uk;
        out += ((uk - db) % uk) * powk_[static_cast<std::size_t>(n_ + i)];
    }
    out += (((uk - qa) % uk + cross) % uk) *
           powk_[static_cast<std::size_t>(2 * n_)];
    return out;
}

std::size_t FiniteHeisenberg::conjugate(std::size_t g, std::size_t h) const {
    return compose(compose(h, g), inverse(h));
}

std::size_t FiniteHeisenberg::commutator(std::size_t g, std::size_t h) const {
    return compose(compose(g, h), compose(inverse(g), inverse(h)));
}

HeisenbergPoint<Residue> FiniteHeisenberg::point(std::size_t idx) const {
    const auto uk = static_cast<std::uint64_t>(k_);
    const Int k(static_cast<long>(k_));
    std::uint64_t q = idx;
    std::vector<Residue> x, y;
    x.reserve(static_cast<std::size_t>(n_));
    y.reserve(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        x.emplace_back(Int(static_cast<unsigned long>(q % uk)), k);
        q /= uk;
    }
    for (int i = 0; i < n_; ++i) {
        y.emplace_back(Int(static_cast<unsigned long>(q % uk)), k);
        q /= uk;
    }
    return HeisenbergPoint<Residue>(
        std::move(x), std::move(y), Residue(Int(static_cast<unsigned long>(q)), k));
}

std::size_t FiniteHeisenberg::index_of(const HeisenbergPoint<Residue>& p) const {
    if (p.dim() != n_ || p.t().modulus() != Int(static_cast<long>(k_))) {
        throw IncompatibleOperandsError(
            "point does not belong to this finite group");
    }
    std::uint64_t out = 0;
    for (int i = 0; i < n_; ++i) {
        out += p.x(i).value().get_ui() * powk_[static_cast<std::size_t>(i)];
        out += p.y(i).value().get_ui() * powk_[static_cast<std::size_t>(n_ + i)];
    }
    out += p.t().value().get_ui() * powk_[static_cast<std::size_t>(2 * n_)];
    return out;
}

Subgroup::Subgroup(FiniteHeisenberg group, std::vector<std::size_t> members,
                   std::optional<std::vector<std::size_t>> generators)
    : group_(std::move(group)),
      members_(std::move(members)),
      generators_(std::move(generators)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()),
                   members_.end());
    if (members_.empty()) {
        throw InvalidSubgroupError("subgroup must contain the identity");
    }
    bitmap_.assign(group_.order(), false);
    for (const std::size_t m : members_) {
        if (m >= group_.order()) {
            throw InvalidSubgroupError("member index " + std::to_string(m) +
                                       " outside the parent group");
        }
        bitmap_[m] = true;
    }
    if (!bitmap_[group_.identity()]) {
        throw InvalidSubgroupError("subgroup must contain the identity");
    }
    for (const std::size_t m : members_) {
        if (!bitmap_[group_.inverse(m)]) {
            throw InvalidSubgroupError("member set not closed under inverse");
        }
    }
    for (const std::size_t a : members_) {
        for (const std::size_t b : members_) {
            if (!bitmap_[group_.compose(a, b)]) {
                throw InvalidSubgroupError(
                    "member set not closed under the group operation");
            }
        }
    }
}

Subgroup trivial_subgroup(const FiniteHeisenberg& G) {
    return Subgroup(G, {G.identity()});
}

Subgroup whole_group(const FiniteHeisenberg& G) {
    std::vector<std::size_t> all(G.order());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return Subgroup(G, std::move(all));
}

Subgroup generated_by(const FiniteHeisenberg& G,
                      const std::vector<std::size_t>& generators) {
    return Subgroup(G, close_under(G, generators, /*under_conjugation=*/false),
                    generators);
}

Subgroup lattice_image(const FiniteHeisenberg& G, const Int& c) {
    if (c < 1) {
        throw InvalidSubgroupError("lattice scale must be >= 1");
    }
    const Int k(static_cast<long>(G.modulus()));
    const Int g = gcd(c, k);
    const std::int64_t step = g.get_si();
    const std::int64_t count = G.modulus() / step;
    const int digits = 2 * G.dim() + 1;
    std::vector<std::size_t> members;
    std::size_t total = 1;
    for (int i = 0; i < digits; ++i) {
        total *= static_cast<std::size_t>(count);
    }
    members.reserve(total);
    // Odometer over the allowed digit values (multiples of gcd(c, k)).
    std::vector<std::int64_t> digit(static_cast<std::size_t>(digits), 0);
    for (std::size_t it = 0; it < total; ++it) {
        std::uint64_t idx = 0;
        std::uint64_t weight = 1;
        for (int i = 0; i < digits; ++i) {
            idx += static_cast<std::uint64_t>(digit[static_cast<std::size_t>(i)] *
                                              step) *
                   weight;
            weight *= static_cast<std::uint64_t>(G.modulus());
        }
        members.push_back(idx);
        for (int i = 0; i < digits; ++i) {
            auto& d = digit[static_cast<std::size_t>(i)];
            if (++d < count) {
                break;
            }
            d = 0;
        }
    }
    return Subgroup(G, std::move(members));
}

Subgroup dilation_image(const FiniteHeisenberg& G, const Int& r) {
    if (r < 1) {
        throw InvalidSubgroupError("dilation factor must be >= 1");
    }
    const Int k(static_cast<long>(G.modulus()));
    const std::int64_t step_xy = Int(gcd(r, k)).get_si();
    const std::int64_t step_t = Int(gcd(Int(r * r), k)).get_si();
    const std::int64_t count_xy = G.modulus() / step_xy;
    const std::int64_t count_t = G.modulus() / step_t;
    const int nxy = 2 * G.dim();
    std::vector<std::size_t> members;
    std::size_t total = static_cast<std::size_t>(count_t);
    for (int i = 0; i < nxy; ++i) {
        total *= static_cast<std::size_t>(count_xy);
    }
    members.reserve(total);
    std::vector<std::int64_t> digit(static_cast<std::size_t>(nxy) + 1, 0);
    for (std::size_t it = 0; it < total; ++it) {
        std::uint64_t idx = 0;
        std::uint64_t weight = 1;
        for (int i = 0; i < nxy; ++i) {
            idx += static_cast<std::uint64_t>(digit[static_cast<std::size_t>(i)] *
                                              step_xy) *
                   weight;
            weight *= static_cast<std::uint64_t>(G.modulus());
        }
        idx += static_cast<std::uint64_t>(digit[static_cast<std::size_t>(nxy)] *
                                          step_t) *
               weight;
        members.push_back(idx);
        for (int i = 0; i <= nxy; ++i) {
            auto& d = digit[static_cast<std::size_t>(i)];
            const std::int64_t limit = (i == nxy) ? count_t : count_xy;
            if (++d < limit) {
                break;
            }
            d = 0;
        }
    }
    return Subgroup(G, std::move(members));
}

Subgroup center_of(const FiniteHeisenberg& G) {
    std::vector<std::size_t> members;
    for (std::size_t g = 0; g < G.order(); ++g) {
        bool central = true;
        for (std::size_t h = 0; h < G.order(); ++h) {
            if (G.compose(g, h) != G.compose(h, g)) {
                central = false;
                break;
            }
        }
        if (central) {
            members.push_back(g);
        }
    }
    return Subgroup(G, std::move(members));
}

Subgroup center_of(const FiniteHeisenberg& G, const Subgroup& H) {
    check_same_group(G, H);
    std::vector<std::size_t> members;
    for (const std::size_t g : H.members()) {
        bool central = true;
        for (const std::size_t h : H.members()) {
            if (G.compose(g, h) != G.compose(h, g)) {
                central = false;
                break;
            }
        }
        if (central) {
            members.push_back(g);
        }
    }
    return Subgroup(G, std::move(members));
}

Subgroup commutator_subgroup(const FiniteHeisenberg& G) {
    std::vector<std::size_t> bases(G.base_count());
    std::iota(bases.begin(), bases.end(), std::size_t{0});
    return close_commutators(G, bases);
}

Subgroup commutator_subgroup(const FiniteHeisenberg& G, const Subgroup& H) {
    check_same_group(G, H);
    // [g, h] is unchanged when either argument absorbs a central factor, and
    // every element splits as (x, y, 0) * (0, 0, t), so distinct base
    // representatives of H's members see every commutator value.
    return close_commutators(G, distinct_bases(G, H.members()));
}

Subgroup intersect(const Subgroup& A, const Subgroup& B) {
    if (!A.group().same_group(B.group())) {
        throw InvalidSubgroupError(
            "cannot intersect subgroups of different groups");
    }
    std::vector<std::size_t> members;
    for (const std::size_t m : A.members()) {
        if (B.contains(m)) {
            members.push_back(m);
        }
    }
    return Subgroup(A.group(), std::move(members));
}

Int subgroup_index(const FiniteHeisenberg& G, const Subgroup& H) {
    check_same_group(G, H);
    std::vector<bool> covered(G.order(), false);
    std::size_t cosets = 0;
    for (std::size_t g = 0; g < G.order(); ++g) {
        if (covered[g]) {
            continue;
        }
        ++cosets;
        for (const std::size_t h : H.members()) {
            covered[G.compose(g, h)] = true;
        }
    }
    const Int by_order = Int(static_cast<unsigned long>(G.order())) /
                         Int(static_cast<unsigned long>(H.order()));
    if (by_order != Int(static_cast<unsigned long>(cosets))) {
        throw InvalidSubgroupError(
            "coset count disagrees with |G|/|H|; handle is corrupt");
    }
    return by_order;
}

bool is_normal(const FiniteHeisenberg& G, const Subgroup& H) {
    check_same_group(G, H);
    for (std::size_t g = 0; g < G.base_count(); ++g) {
        const std::size_t inv = G.inverse(g);
        for (const std::size_t m : H.members()) {
            if (!H.contains(G.compose(G.compose(g, m), inv))) {
                return false;
            }
        }
    }
    return true;
}

bool is_normal_in(const Subgroup& K, const Subgroup& H) {
    if (!K.group().same_group(H.group())) {
        throw InvalidSubgroupError(
            "subgroups live in different ambient groups");
    }
    const FiniteHeisenberg& G = K.group();
    for (const std::size_t m : H.members()) {
        if (!K.contains(m)) {
            throw InvalidSubgroupError("H is not contained in K");
        }
    }
    // Conjugation by a central factor is trivial, but K need not contain a
    // full set of center-coset representatives, so conjugate by every member.
    for (const std::size_t g : K.members()) {
        const std::size_t inv = G.inverse(g);
        for (const std::size_t m : H.members()) {
            if (!H.contains(G.compose(G.compose(g, m), inv))) {
                return false;
            }
        }
    }
    return true;
}

Subgroup normal_closure(const FiniteHeisenberg& G, const Subgroup& H) {
    check_same_group(G, H);
    return Subgroup(G, close_under(G, H.members(), /*under_conjugation=*/true),
                    H.members());
}

Int quotient_center_by_commutator(int n, const Int& k, int depth,
                                  std::size_t cap) {
    if (depth < 3) {
        throw InsufficientResolutionError(
            "depth " + std::to_string(depth) +
            " cannot resolve both kZ and k^2 Z; need depth >= 3");
    }
    const FiniteHeisenberg G =
        FiniteHeisenberg::enumerate(n, pow_int(k, static_cast<unsigned long>(depth)), cap);
    const Subgroup image = lattice_image(G, k);
    const Subgroup center_image = intersect(center_of(G), image);
    const Subgroup comm = commutator_subgroup(G, image);
    for (const std::size_t m : comm.members()) {
        if (!center_image.contains(m)) {
            throw InvalidSubgroupError(
                "commutator subgroup not contained in the center image");
        }
    }
    const Int zc(static_cast<unsigned long>(center_image.order()));
    const Int cc(static_cast<unsigned long>(comm.order()));
    if (!divides(cc, zc)) {
        throw InvalidSubgroupError(
            "center image order not divisible by commutator order");
    }
    return zc / cc;
}

} // namespace heis::finite
