#include "sandrank/sandpile.hpp"

#include "sandrank/errors.hpp"
#include "sandrank/prime_field_matrix.hpp"

#include <algorithm>
#include <optional>

namespace sandrank::sandpile {

namespace {

// Row-major working copy for Smith elimination, optionally kept reduced to
// symmetric residues (-D/2, D/2] of a modulus D.
class SmithWorkspace {
public:
    SmithWorkspace(const IntegerMatrix& m, std::optional<BigInt> modulus)
        : rows_(m.rows()), cols_(m.cols()), a_(m.entries()), modulus_(std::move(modulus)) {
        if (modulus_) {
            half_ = *modulus_ / 2;
            for (auto& x : a_) reduce(x.get_mpz_t());
        }
    }

    std::vector<BigInt> run() {
        const std::size_t n = std::min(rows_, cols_);
        std::vector<BigInt> diag(n, 0);
        for (std::size_t k = 0; k < n; ++k) {
            if (!settle_pivot(k)) break; // trailing block is zero
            diag[k] = abs(a_[k * cols_ + k]);
        }
        if (modulus_) {
            for (auto& d : diag) mpz_gcd(d.get_mpz_t(), d.get_mpz_t(), modulus_->get_mpz_t());
        }
        return diag;
    }

private:
    mpz_ptr at(std::size_t i, std::size_t j) { return a_[i * cols_ + j].get_mpz_t(); }

    void reduce(mpz_ptr x) {
        if (!modulus_ || mpz_cmpabs(x, half_.get_mpz_t()) <= 0) return;
        mpz_fdiv_r(x, x, modulus_->get_mpz_t());
        if (mpz_cmp(x, half_.get_mpz_t()) > 0) mpz_sub(x, x, modulus_->get_mpz_t());
    }

    // Smallest nonzero |entry| in the trailing block from (k, k); first in
    // row-major order among ties.
    bool find_pivot(std::size_t k, std::size_t& pi, std::size_t& pj) {
        mpz_ptr best = nullptr;
        for (std::size_t i = k; i < rows_; ++i) {
            for (std::size_t j = k; j < cols_; ++j) {
                mpz_ptr x = at(i, j);
                if (mpz_sgn(x) == 0) continue;
                if (best == nullptr || mpz_cmpabs(x, best) < 0) {
                    best = x;
                    pi = i;
                    pj = j;
                    if (mpz_cmpabs_ui(x, 1) == 0) return true;
                }
            }
        }
        return best != nullptr;
    }

    void swap_rows(std::size_t i, std::size_t k) {
        if (i == k) return;
        for (std::size_t j = k; j < cols_; ++j) mpz_swap(at(i, j), at(k, j));
    }

    void swap_cols(std::size_t j, std::size_t k) {
        if (j == k) return;
        for (std::size_t i = k; i < rows_; ++i) mpz_swap(at(i, j), at(i, k));
    }

    // Brings a pivot to (k, k) that divides every entry of the trailing block,
    // with row k and column k otherwise cleared.
    bool settle_pivot(std::size_t k) {
        for (;;) {
            std::size_t pi = k, pj = k;
            if (!find_pivot(k, pi, pj)) return false;
            swap_rows(pi, k);
            swap_cols(pj, k);
            mpz_ptr pivot = at(k, k);

            bool clean = true;
            for (std::size_t i = k + 1; i < rows_; ++i) {
                if (mpz_sgn(at(i, k)) == 0) continue;
                mpz_tdiv_q(quot_.get_mpz_t(), at(i, k), pivot);
                for (std::size_t j = k; j < cols_; ++j) {
                    if (mpz_sgn(at(k, j)) == 0) continue;
                    mpz_submul(at(i, j), quot_.get_mpz_t(), at(k, j));
                    reduce(at(i, j));
                }
                if (mpz_sgn(at(i, k)) != 0) clean = false;
            }
            if (!clean) continue;

            // Column k is now zero below the pivot, so column operations only touch row k.
            for (std::size_t j = k + 1; j < cols_; ++j) {
                if (mpz_sgn(at(k, j)) == 0) continue;
                mpz_tdiv_r(at(k, j), at(k, j), pivot);
                if (mpz_sgn(at(k, j)) != 0) clean = false;
            }
            if (!clean) continue;

            if (mpz_cmpabs_ui(pivot, 1) == 0) return true;
            bool divides_all = true;
            for (std::size_t i = k + 1; i < rows_ && divides_all; ++i) {
                for (std::size_t j = k + 1; j < cols_; ++j) {
                    if (!mpz_divisible_p(at(i, j), pivot)) {
                        for (std::size_t jj = k + 1; jj < cols_; ++jj) {
                            mpz_add(at(k, jj), at(k, jj), at(i, jj));
                            reduce(at(k, jj));
                        }
                        divides_all = false;
                        break;
                    }
                }
            }
            if (divides_all) return true;
        }
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<BigInt> a_;
    std::optional<BigInt> modulus_;
    BigInt half_;
    BigInt quot_;
};

} // namespace

std::vector<BigInt> normalize_invariant_factors(std::vector<BigInt> diag) {
    for (auto& d : diag) d = abs(d);
    for (std::size_t i = 0; i < diag.size(); ++i) {
        for (std::size_t j = i + 1; j < diag.size(); ++j) {
            BigInt g, l;
            mpz_gcd(g.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
            mpz_lcm(l.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
            // gcd(0, x) = x and lcm(0, x) = 0, so free summands drift to the back.
            diag[i] = g;
            diag[j] = l;
        }
    }
    return diag;
}

std::vector<BigInt> smith_normal_form(const IntegerMatrix& m) {
    std::optional<BigInt> modulus;
    if (m.is_square() && m.rows() > 0) {
        BigInt det = abs(determinant(m));
        if (det == 1) return std::vector<BigInt>(m.rows(), 1);
        if (det != 0) modulus = std::move(det);
    }
    return normalize_invariant_factors(SmithWorkspace(m, std::move(modulus)).run());
}

GroupInvariants cokernel(const IntegerMatrix& m) {
    GroupInvariants g;
    const auto diag = smith_normal_form(m);
    g.free_rank = m.rows() - diag.size();
    for (const auto& d : diag) {
        if (d == 0) {
            ++g.free_rank;
        } else if (d != 1) {
            g.factors.push_back(d);
            g.order *= d;
        }
    }
    return g;
}

IntegerMatrix component_reduced_laplacian(const graph::BipartiteGraph& g,
                                          const std::vector<std::size_t>& component,
                                          std::size_t drop_position) {
    if (drop_position >= component.size())
        throw IndexOutOfRange("drop position outside component");
    const std::size_t nl = g.n_left();
    const std::size_t k = component.size() - 1;
    std::vector<std::size_t> kept;
    kept.reserve(k);
    for (std::size_t i = 0; i < component.size(); ++i)
        if (i != drop_position) kept.push_back(component[i]);

    IntegerMatrix out(k, k);
    for (std::size_t a = 0; a < k; ++a) {
        out(a, a) = static_cast<unsigned long>(g.degree(kept[a]));
        for (std::size_t b = 0; b < k; ++b) {
            const std::size_t u = kept[a];
            const std::size_t v = kept[b];
            if ((u < nl) == (v < nl)) continue;
            const bool edge = u < nl ? g.has_edge(u, v - nl) : g.has_edge(v, u - nl);
            if (edge) out(a, b) = -1;
        }
    }
    return out;
}

GroupInvariants sandpile_group(const graph::BipartiteGraph& g) {
    std::vector<BigInt> factors;
    for (const auto& comp : graph::connected_components(g)) {
        if (comp.size() < 2) continue;
        const auto part = cokernel(component_reduced_laplacian(g, comp, comp.size() - 1));
        factors.insert(factors.end(), part.factors.begin(), part.factors.end());
    }
    GroupInvariants out;
    for (auto& d : normalize_invariant_factors(std::move(factors))) {
        if (d == 1) continue;
        out.order *= d;
        out.factors.push_back(std::move(d));
    }
    return out;
}

std::size_t p_rank(const graph::BipartiteGraph& g, std::uint64_t p) {
    if (p >= gfp::kModulusLimit || !gfp::is_prime(p))
        throw NotPrime(std::to_string(p) + " is not a prime below 2^31");
    const auto lap = graph::laplacian_mod_p(g, static_cast<gfp::Residue>(p));
    return gfp::corank_mod_p(lap) - graph::connected_components(g).size();
}

std::size_t p_rank(const GroupInvariants& group, std::uint64_t p) {
    if (!gfp::is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    std::size_t count = group.free_rank;
    for (const auto& d : group.factors)
        if (mpz_divisible_ui_p(d.get_mpz_t(), p)) ++count;
    return count;
}

bool is_cyclic(const GroupInvariants& group) { return group.free_rank + group.factors.size() <= 1; }

bool is_cyclic(const graph::BipartiteGraph& g) { return is_cyclic(sandpile_group(g)); }

BigInt spanning_tree_count(const graph::BipartiteGraph& g) {
    const auto comps = graph::connected_components(g);
    if (comps.size() != 1) throw Disconnected("graph has " + std::to_string(comps.size()) + " components");
    return determinant(component_reduced_laplacian(g, comps.front(), comps.front().size() - 1));
}

} // namespace sandrank::sandpile
