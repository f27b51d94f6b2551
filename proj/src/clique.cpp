#include "qr/clique.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace qr {

namespace {

// Tomita-style branch and bound on a reordered bitset adjacency.
class CliqueSearch {
public:
    CliqueSearch(const GraphInstance& G, std::uint64_t budget)
        : n_(G.n), words_(G.words), budget_(budget) {
        // descending degree, ties by index
        perm_.resize(n_);
        std::iota(perm_.begin(), perm_.end(), 0u);
        std::stable_sort(perm_.begin(), perm_.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (G.degrees[a] != G.degrees[b]) return G.degrees[a] > G.degrees[b];
            return a < b;
        });
        inv_.resize(n_);
        for (std::uint32_t i = 0; i < n_; ++i) inv_[perm_[i]] = i;
        adj_.assign(static_cast<std::size_t>(n_) * words_, 0);
        for (std::uint32_t i = 0; i < n_; ++i)
            for (std::uint32_t j = 0; j < n_; ++j)
                if (G.adj(perm_[i], perm_[j]))
                    adj_[i * words_ + (j >> 6)] |= 1ull << (j & 63);
    }

    CliqueResult run() {
        std::vector<std::uint64_t> P(words_, 0);
        for (std::uint32_t v = 0; v < n_; ++v) P[v >> 6] |= 1ull << (v & 63);
        std::vector<std::uint32_t> R;
        expand(R, P);
        CliqueResult res;
        res.omega = static_cast<std::uint32_t>(best_.size());
        res.witness.reserve(best_.size());
        for (auto i : best_) res.witness.push_back(perm_[i]);
        std::sort(res.witness.begin(), res.witness.end());
        res.nodes_explored = nodes_;
        res.exact = !aborted_;
        return res;
    }

private:
    std::uint32_t n_;
    std::size_t words_;
    std::uint64_t budget_;
    std::vector<std::uint32_t> perm_, inv_;
    std::vector<std::uint64_t> adj_;
    std::vector<std::uint32_t> best_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;

    const std::uint64_t* row(std::uint32_t i) const { return adj_.data() + i * words_; }

    void expand(std::vector<std::uint32_t>& R, const std::vector<std::uint64_t>& P) {
        ++nodes_;
        if (budget_ && nodes_ > budget_) {
            aborted_ = true;
            return;
        }
        // greedy coloring of P in index order; branch in decreasing color
        std::vector<std::uint32_t> verts;
        for (std::uint32_t v = 0; v < n_; ++v)
            if ((P[v >> 6] >> (v & 63)) & 1u) verts.push_back(v);
        if (verts.empty()) {
            if (R.size() > best_.size()) best_ = R;
            return;
        }
        std::vector<std::uint32_t> color(verts.size());
        std::vector<std::vector<std::uint64_t>> class_bits;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            std::uint32_t v = verts[i];
            std::uint32_t c = 0;
            for (;; ++c) {
                if (c == class_bits.size()) {
                    class_bits.emplace_back(words_, 0);
                    break;
                }
                bool conflict = false;
                const std::uint64_t* rv = row(v);
                for (std::size_t w = 0; w < words_; ++w)
                    if (class_bits[c][w] & rv[w]) {
                        conflict = true;
                        break;
                    }
                if (!conflict) break;
            }
            class_bits[c][v >> 6] |= 1ull << (v & 63);
            color[i] = c + 1;
        }
        // sort branch order by ascending color; process from the back
        std::vector<std::size_t> order(verts.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return color[a] < color[b]; });

        std::vector<std::uint64_t> Pcur = P;
        for (std::size_t k = order.size(); k-- > 0;) {
            if (aborted_) return;
            std::size_t i = order[k];
            std::uint32_t v = verts[i];
            if (R.size() + color[i] <= best_.size()) return;  // bound
            R.push_back(v);
            std::vector<std::uint64_t> Pnext(words_);
            const std::uint64_t* rv = row(v);
            bool empty = true;
            for (std::size_t w = 0; w < words_; ++w) {
                Pnext[w] = Pcur[w] & rv[w];
                if (Pnext[w]) empty = false;
            }
            if (empty) {
                if (R.size() > best_.size()) best_ = R;
            } else {
                expand(R, Pnext);
            }
            R.pop_back();
            Pcur[v >> 6] &= ~(1ull << (v & 63));
        }
    }
};

}  // namespace

CliqueResult max_clique(const GraphInstance& G, std::uint64_t node_budget) {
    CliqueResult res = CliqueSearch(G, node_budget).run();
    // re-verify the witness against the bit matrix
    for (std::size_t i = 0; i < res.witness.size(); ++i)
        for (std::size_t j = i + 1; j < res.witness.size(); ++j)
            if (!G.adj(res.witness[i], res.witness[j]))
                fail("NoConvergence", "internal: clique witness failed verification");
    return res;
}

CliqueResult independence_number(const GraphInstance& G, std::uint64_t node_budget) {
    return max_clique(complement_graph(G), node_budget);
}

HomogeneousTransfer verify_homogeneous_transfer(const GraphInstance& G, const BivarPoly& f,
                                                const Field& F, elem r) {
    int d = f.total_degree();
    for (const auto& [ij, c] : f.t)
        if (ij.first + ij.second != d)
            fail("NotHomogeneousOdd", "polynomial is not homogeneous");
    if (d % 2 == 0) fail("NotHomogeneousOdd", "homogeneous degree must be odd");
    CharTable chi = quadratic_character(F);
    if (chi.chi[r] >= 0) fail("RIsSquare", "r must be a non-square");

    HomogeneousTransfer out;
    CliqueResult alpha = independence_number(G);
    CliqueResult omega = max_clique(G);
    out.alpha = alpha.omega;
    out.omega = omega.omega;
    std::vector<std::uint32_t> mapped;
    for (auto v : alpha.witness) mapped.push_back(F.mul(r, v));
    out.clique_verified = true;
    for (std::size_t i = 0; i < mapped.size(); ++i)
        for (std::size_t j = i + 1; j < mapped.size(); ++j)
            if (!G.adj(mapped[i], mapped[j])) out.clique_verified = false;
    return out;
}

}  // namespace qr
