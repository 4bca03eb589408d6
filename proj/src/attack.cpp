#include "fgc/attack.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "fgc/error.hpp"
#include "parallel.hpp"

namespace fgc {

namespace {

std::uint64_t choose_u64(std::uint64_t n, std::size_t k) {
    if (k > n) return 0;
    BigInt b = binomial(BigInt(static_cast<unsigned long>(n)), k);
    if (b > BigInt(static_cast<unsigned long>(UINT64_MAX))) return UINT64_MAX;
    return b.get_ui();
}

// Colex unranking via the combinatorial number system.
std::vector<std::size_t> unrank_colex(std::uint64_t r, std::size_t n, std::size_t k) {
    std::vector<std::size_t> c(k);
    std::size_t hi = n;
    for (std::size_t i = k; i-- > 0;) {
        std::size_t v = i;
        std::size_t lo = i, top = hi;
        while (lo < top) {
            std::size_t mid = lo + (top - lo + 1) / 2;
            if (choose_u64(mid, i + 1) <= r) lo = mid;
            else top = mid - 1;
        }
        v = lo;
        r -= choose_u64(v, i + 1);
        c[i] = v;
        hi = v;
    }
    return c;
}

void next_colex(std::vector<std::size_t>& c) {
    std::size_t i = 0;
    while (i + 1 < c.size() && c[i] + 1 == c[i + 1]) ++i;
    ++c[i];
    for (std::size_t j = 0; j < i; ++j) c[j] = j;
}

}  // namespace

std::vector<Word> enumerate_ball(int rank, std::size_t L, std::size_t cap) {
    if (rank < 1) throw PreconditionError("rank must be at least 1");
    BigInt need = ball_size(rank, L);
    if (need > BigInt(static_cast<unsigned long>(cap)))
        throw CapExceeded("ball of radius " + std::to_string(L) + " has " + need.get_str() +
                          " elements; the cap is " + std::to_string(cap));
    std::vector<Word> out;
    out.reserve(need.get_ui());
    std::vector<Word> layer{Word{}};
    for (std::size_t len = 1; len <= L; ++len) {
        std::vector<Word> next;
        for (const auto& w : layer)
            for (int i = 1; i <= rank; ++i)
                for (int s : {1, -1}) {
                    Letter l(i, s);
                    if (!w.is_identity() && w.letters().back() == l.inverse()) continue;
                    next.push_back(w * Word{l});
                }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    std::sort(out.begin(), out.end(), [](const Word& u, const Word& v) { return compare_words(u, v) < 0; });
    return out;
}

BigInt ball_size(int rank, std::size_t L) {
    BigInt total = 0, layer = 2 * rank;
    for (std::size_t k = 1; k <= L; ++k) {
        total += layer;
        layer *= 2 * rank - 1;
    }
    return total;
}

BigInt binomial(const BigInt& n, std::size_t k) {
    if (n < 0 || BigInt(static_cast<unsigned long>(k)) > n) return 0;
    BigInt out = 1;
    for (std::size_t i = 0; i < k; ++i) {
        out *= n - static_cast<unsigned long>(i);
        out /= static_cast<unsigned long>(i + 1);
    }
    return out;
}

void AttackConfig::validate() const {
    if (N < 2) throw PreconditionError("target rank N must be at least 2");
    if (K < N) throw PreconditionError("subset size K must be at least N");
    if (L < 1) throw PreconditionError("ball radius L must be at least 1");
    if (max_subsets > kSubsetCap)
        throw CapExceeded("max_subsets " + std::to_string(max_subsets) + " is above the hard cap " +
                          std::to_string(kSubsetCap));
}

AttackReport subset_attack(int rank, const AttackConfig& cfg, const std::optional<GeneratingTuple>& known,
                           unsigned jobs) {
    cfg.validate();
    auto start = std::chrono::steady_clock::now();
    auto ball = enumerate_ball(rank, cfg.L);

    AttackReport report;
    report.ball = ball.size();
    report.total_subsets = binomial(BigInt(static_cast<unsigned long>(ball.size())), cfg.K);
    std::uint64_t total = report.total_subsets > BigInt(static_cast<unsigned long>(cfg.max_subsets))
                              ? cfg.max_subsets
                              : report.total_subsets.get_ui();
    report.subsets_examined = total;
    report.complete = BigInt(static_cast<unsigned long>(total)) == report.total_subsets;

    std::map<GeneratingTuple, std::uint64_t> found;
    std::mutex lock;
    std::size_t blocks = std::max<std::size_t>(1, std::min<std::uint64_t>(total, 64 * std::max(1U, jobs)));
    detail::parallel_for(total == 0 ? 0 : blocks, jobs, [&](std::size_t b) {
        std::uint64_t begin = total * b / blocks, end = total * (b + 1) / blocks;
        if (begin == end) return;
        std::map<GeneratingTuple, std::uint64_t> local;
        auto c = unrank_colex(begin, ball.size(), cfg.K);
        for (std::uint64_t r = begin; r < end; ++r) {
            GeneratingTuple subset;
            for (auto idx : c) subset.push_back(ball[idx]);
            auto reduced = nielsen_reduce(subset).tuple;
            if (reduced.size() == cfg.N) {
                auto canon = canonical_minimal_basis(reduced);
                local.try_emplace(std::move(canon), r + 1);
            }
            if (r + 1 < end) next_colex(c);
        }
        std::lock_guard g(lock);
        for (auto& [basis, idx] : local) {
            auto [it, inserted] = found.try_emplace(basis, idx);
            if (!inserted) it->second = std::min(it->second, idx);
        }
    });

    for (auto& [basis, idx] : found) report.candidates.push_back({basis, idx});
    std::sort(report.candidates.begin(), report.candidates.end(),
              [](const AttackCandidate& x, const AttackCandidate& y) { return x.first_seen < y.first_seen; });
    if (known) {
        report.oracle_given = true;
        auto target = canonical_minimal_basis(nielsen_reduce(*known).tuple);
        if (auto it = found.find(target); it != found.end()) report.hit_index = it->second;
    }
    report.elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    return report;
}

std::string format_report(const AttackReport& report, const Alphabet& alphabet) {
    std::string out = "ball_size = " + std::to_string(report.ball) + "\n";
    out += "total_subsets = " + report.total_subsets.get_str() + "\n";
    out += "subsets_examined = " + std::to_string(report.subsets_examined) + "\n";
    out += std::string("complete = ") + (report.complete ? "true" : "false") + "\n";
    out += "candidates = " + std::to_string(report.candidates.size()) + "\n";
    if (report.oracle_given)
        out += "hit_index = " + (report.hit_index ? std::to_string(*report.hit_index) : std::string("none")) + "\n";
    for (const auto& c : report.candidates) {
        out += "# first seen at subset " + std::to_string(c.first_seen) + "\n";
        out += format_tuple(c.basis, alphabet);
    }
    return out;
}

Rational primitive_lower_bound_rank2(std::size_t k) {
    if (k < 1) throw PreconditionError("length must be at least 1");
    if (k == 1) return make_rational(8, 3);
    BigInt three_pow;
    if (k % 2 == 1) {
        mpz_ui_pow_ui(three_pow.get_mpz_t(), 3, (k - 3) / 2);
        return Rational(8 * three_pow);
    }
    mpz_ui_pow_ui(three_pow.get_mpz_t(), 3, (k - 2) / 2);
    return Rational(4 * three_pow);
}

std::pair<int, int> primitive_growth_rates(int rank) {
    if (rank < 3) throw PreconditionError("growth rates are stated for rank at least 3");
    return {2 * rank - 3, 2 * rank - 2};
}

CostEstimate attack_cost_estimate(int rank, const AttackConfig& cfg) {
    CostEstimate e;
    e.ball = ball_size(rank, cfg.L);
    e.subsets = binomial(e.ball, cfg.K);
    e.per_subset = BigInt(static_cast<unsigned long>(cfg.L)) * static_cast<unsigned long>(cfg.L);
    return e;
}

std::string format_estimate(const CostEstimate& e) {
    return "ball_size = " + e.ball.get_str() + "\ntotal_subsets = " + e.subsets.get_str() +
           "\nper_subset_cost = " + e.per_subset.get_str() + "\n";
}

}  // namespace fgc
