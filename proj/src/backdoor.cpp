#include "asymlab/backdoor.hpp"

#include "asymlab/generators.hpp"
#include "asymlab/solver.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace asymlab {

std::optional<BackdoorFamily> backdoor_family_from_name(std::string_view name) {
    if (name == "map-sym")
        return BackdoorFamily::MapSym;
    if (name == "map-asym")
        return BackdoorFamily::MapAsym;
    if (name == "sbw-sym")
        return BackdoorFamily::SbwSym;
    if (name == "sbw-asym")
        return BackdoorFamily::SbwAsym;
    if (name == "sph")
        return BackdoorFamily::Sph;
    return std::nullopt;
}

std::string backdoor_family_name(BackdoorFamily f) {
    switch (f) {
    case BackdoorFamily::MapSym: return "map-sym";
    case BackdoorFamily::MapAsym: return "map-asym";
    case BackdoorFamily::SbwSym: return "sbw-sym";
    case BackdoorFamily::SbwAsym: return "sbw-asym";
    case BackdoorFamily::Sph: return "sph";
    }
    return "?";
}

namespace {

std::string at(const std::string& name, int t) { return name + "@" + std::to_string(t); }

std::string sbw_good(int i) { return i == 0 ? std::string("t2") : "g" + std::to_string(i); }

std::vector<std::string> map_sym_names(int n) {
    if (n < 2)
        throw InvalidParams("map-sym backdoor requires n >= 2");
    std::vector<std::string> out;
    std::vector<int> T;
    for (int t = 3; t <= 2 * n - 3; t += 2)
        T.push_back(t);
    for (int t : T)
        for (int i = 2; i <= n; ++i)
            out.push_back(at(map_move("L0", map_node(i, 1)), t));
    for (int t : T)
        for (int i = 3; i <= n; ++i)
            out.push_back(at("NOOP-visited-" + map_node(i, 1), t));
    out.push_back(at("NOOP-at-L0", 1));
    for (int t : T)
        if (t != 2 * n - 5 && t != 2 * n - 3)
            out.push_back(at(map_move("L0", map_node(1, 1)), t));
    return out;
}

std::vector<std::string> map_asym_names(int n) {
    if (n < 2)
        throw InvalidParams("map-asym backdoor requires n >= 2");
    std::vector<std::string> out;
    for (int i = 1; i <= ceil_log2(n); ++i) {
        int step = (1 << i) - 1;
        out.push_back(at(map_move(map_node(1, step - 1), map_node(1, step)), step));
    }
    return out;
}

std::vector<std::string> sbw_sym_names(int n) {
    if (n < 3)
        throw InvalidParams("sbw-sym backdoor requires n >= 3");
    std::vector<std::string> out;
    auto is_cut_field = [&](int i, int j, int t) {
        return t == i + 1 && i >= std::max(2, n - 4) && i <= n - 2 && j <= n - 2;
    };
    for (int i = 1; i <= n - 2; ++i)
        for (int j = 0; j <= n; ++j) {
            if (j == i)
                continue;
            for (int t = 2; t <= n - 1; ++t)
                if (!is_cut_field(i, j, t))
                    out.push_back(at("movetot2-" + sbw_good(i) + "-" + sbw_good(j), t));
        }
    return out;
}

int sbw_u(int n) {
    int u = 0;
    long p = 3;
    while (p < n) {
        p *= 2;
        ++u;
    }
    return u; // ceil(log2(n/3))
}

std::vector<std::string> sbw_asym_names(int n) {
    if (n < 3)
        throw InvalidParams("sbw-asym backdoor requires n > 2");
    std::vector<std::string> out{at("movetot2-g1-t2", 1), at("movetot2-g2-t2", 1)};
    for (int i = 1; i <= sbw_u(n); ++i) {
        int b = 3 * (1 << (i - 1)) - 1; // block and time step index
        out.push_back(at("movetot2-b" + std::to_string(b) + "-b" + std::to_string(b - 1), b));
    }
    return out;
}

std::vector<std::string> sph_names(int n, int k) {
    if (k < 1 || k > n - 1)
        throw InvalidParams("sph backdoor requires 1 <= k <= n-1");
    std::vector<std::string> out;
    for (int y = 1; y <= n - 1; ++y)
        out.push_back("0_" + std::to_string(y));
    for (int x = k + 2; x <= n; ++x)
        for (int y = 1; y <= n - 1; ++y)
            out.push_back(std::to_string(x) + "_" + std::to_string(y));
    return out;
}

} // namespace

std::vector<std::string> known_backdoor_names(BackdoorFamily family, int n, int k) {
    switch (family) {
    case BackdoorFamily::MapSym:
        if (k != 1)
            throw InvalidParams("map-sym backdoor is defined for k = 1");
        return map_sym_names(n);
    case BackdoorFamily::MapAsym:
        if (k != 2 * n - 3)
            throw InvalidParams("map-asym backdoor is defined for k = 2n-3");
        return map_asym_names(n);
    case BackdoorFamily::SbwSym:
        if (k != 0)
            throw InvalidParams("sbw-sym backdoor is defined for k = 0");
        return sbw_sym_names(n);
    case BackdoorFamily::SbwAsym:
        if (k != n - 2)
            throw InvalidParams("sbw-asym backdoor is defined for k = n-2");
        return sbw_asym_names(n);
    case BackdoorFamily::Sph:
        return sph_names(n, k);
    }
    throw InvalidParams("unknown backdoor family");
}

BackdoorSpec known_backdoor(BackdoorFamily family, int n, int k, const CnfFormula& f) {
    BackdoorSpec spec;
    for (const auto& name : known_backdoor_names(family, n, k)) {
        int v = f.var_by_name(name);
        if (v == 0)
            throw InvalidParams("backdoor variable not in formula: " + name);
        spec.vars.push_back(v);
    }
    return spec;
}

namespace {

struct Counter {
    Propagator prop;
    const std::vector<int>& B;
    unsigned long long limit; // 0 = unlimited
    std::vector<std::int8_t> cur;
    std::optional<std::vector<std::int8_t>>* witness;

    Counter(const CnfFormula& f, const std::vector<int>& B_, unsigned long long limit_,
            std::optional<std::vector<std::int8_t>>* w)
        : prop(f), B(B_), limit(limit_), cur(B_.size(), -1), witness(w) {}

    // UP-consistent full assignments of B[depth..] under the current prefix.
    unsigned long long count(std::size_t depth) {
        if (depth == B.size()) {
            if (witness && !witness->has_value())
                *witness = cur;
            return 1;
        }
        int v = B[depth];
        unsigned long long total = 0;
        for (int value = 0; value < 2 && (limit == 0 || total < limit); ++value) {
            cur[depth] = static_cast<std::int8_t>(value);
            std::int8_t have = prop.value(v);
            if (have != -1) {
                if (have == value)
                    total += count(depth + 1);
                continue;
            }
            if (prop.assume(value ? v : -v))
                total += count(depth + 1);
            prop.pop();
        }
        cur[depth] = -1;
        return total;
    }
};

unsigned long long pow2(std::size_t bits) { return 1ull << bits; }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace

VerificationReport verify_backdoor(const CnfFormula& f, const std::vector<int>& B,
                                   const VerifyOptions& opts) {
    if (static_cast<int>(B.size()) > opts.exhaustive_cap)
        throw CapExceeded("backdoor set exceeds the exhaustive cap of " +
                          std::to_string(opts.exhaustive_cap) + " variables");
    VerificationReport rep;
    rep.total = pow2(B.size());

    int threads = std::max(1, opts.threads);
    if (threads == 1 || opts.consistent_limit > 0 || B.size() < 8) {
        Counter counter(f, B, opts.consistent_limit, &rep.first_counterexample);
        if (counter.prop.root_conflict())
            rep.consistent = 0;
        else
            rep.consistent = counter.count(0);
    } else {
        // Split on a prefix of the backdoor variables; ranges are disjoint
        // and the counts merge additively.
        const std::size_t prefix = std::min<std::size_t>(B.size() - 1, 10);
        const unsigned long long nprefix = pow2(prefix);
        std::atomic<unsigned long long> next{0};
        std::vector<unsigned long long> counts(static_cast<std::size_t>(threads), 0);
        std::vector<std::optional<std::vector<std::int8_t>>> witnesses(
            static_cast<std::size_t>(threads));
        std::vector<unsigned long long> witness_prefix(static_cast<std::size_t>(threads),
                                                       ~0ull);
        auto worker = [&](int tid) {
            Counter counter(f, B, 0, &witnesses[static_cast<std::size_t>(tid)]);
            if (counter.prop.root_conflict())
                return;
            for (unsigned long long p = next.fetch_add(1); p < nprefix;
                 p = next.fetch_add(1)) {
                bool dead = false;
                std::size_t pushed = 0;
                for (std::size_t i = 0; i < prefix; ++i) {
                    int value = static_cast<int>((p >> (prefix - 1 - i)) & 1);
                    counter.cur[i] = static_cast<std::int8_t>(value);
                    int v = B[i];
                    std::int8_t have = counter.prop.value(v);
                    if (have != -1) {
                        if (have == value)
                            continue;
                        dead = true;
                        break;
                    }
                    ++pushed;
                    if (!counter.prop.assume(value ? v : -v)) {
                        dead = true;
                        break;
                    }
                }
                if (!dead) {
                    bool had_witness = witnesses[static_cast<std::size_t>(tid)].has_value();
                    counts[static_cast<std::size_t>(tid)] += counter.count(prefix);
                    if (!had_witness && witnesses[static_cast<std::size_t>(tid)].has_value())
                        witness_prefix[static_cast<std::size_t>(tid)] =
                            std::min(witness_prefix[static_cast<std::size_t>(tid)], p);
                }
                while (pushed--)
                    counter.prop.pop();
                for (std::size_t i = 0; i < prefix; ++i)
                    counter.cur[i] = -1;
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(worker, t);
        for (auto& th : pool)
            th.join();
        for (int t = 0; t < threads; ++t)
            rep.consistent += counts[static_cast<std::size_t>(t)];
        unsigned long long best = ~0ull;
        for (int t = 0; t < threads; ++t)
            if (witnesses[static_cast<std::size_t>(t)] &&
                witness_prefix[static_cast<std::size_t>(t)] < best) {
                best = witness_prefix[static_cast<std::size_t>(t)];
                rep.first_counterexample = witnesses[static_cast<std::size_t>(t)];
            }
    }
    rep.conflicts = rep.total - rep.consistent;
    return rep;
}

VerificationReport sample_backdoor(const CnfFormula& f, const std::vector<int>& B,
                                   unsigned long long samples, std::uint64_t seed,
                                   int threads) {
    VerificationReport rep;
    rep.total = samples;
    threads = std::max(1, threads);
    {
        Propagator probe(f);
        if (probe.root_conflict()) {
            rep.conflicts = samples;
            return rep;
        }
    }

    struct WorkerResult {
        unsigned long long consistent = 0;
        unsigned long long first_hit = ~0ull;
        std::vector<std::int8_t> witness;
    };
    std::vector<WorkerResult> results(static_cast<std::size_t>(threads));

    auto worker = [&](int tid) {
        WorkerResult& res = results[static_cast<std::size_t>(tid)];
        Propagator prop(f);
        std::vector<int> lits(B.size());
        std::vector<std::int8_t> vals(B.size());
        for (unsigned long long s = static_cast<unsigned long long>(tid); s < samples;
             s += static_cast<unsigned long long>(threads)) {
            // Counter-based bits: sample s draws the same assignment
            // regardless of the thread count.
            for (std::size_t i = 0; i < B.size(); ++i) {
                std::uint64_t bits = splitmix64(seed ^ (s * 0x100000001b3ull + i));
                int value = static_cast<int>(bits & 1);
                lits[i] = value ? B[i] : -B[i];
                vals[i] = static_cast<std::int8_t>(value);
            }
            bool ok = prop.assume_all(lits);
            prop.pop();
            if (ok) {
                ++res.consistent;
                if (s < res.first_hit) {
                    res.first_hit = s;
                    res.witness = vals;
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back(worker, t);
    for (auto& th : pool)
        th.join();
    unsigned long long best = ~0ull;
    for (const auto& res : results) {
        rep.consistent += res.consistent;
        if (res.first_hit < best) {
            best = res.first_hit;
            rep.first_counterexample = res.witness;
        }
    }
    rep.conflicts = rep.total - rep.consistent;
    return rep;
}

std::vector<MinimalityRow> minimality_report(const CnfFormula& f, const std::vector<int>& B,
                                             unsigned long long per_removal_limit,
                                             const VerifyOptions& opts) {
    std::vector<MinimalityRow> rows;
    for (std::size_t skip = 0; skip < B.size(); ++skip) {
        std::vector<int> rest;
        rest.reserve(B.size() - 1);
        for (std::size_t i = 0; i < B.size(); ++i)
            if (i != skip)
                rest.push_back(B[i]);
        if (static_cast<int>(rest.size()) > opts.exhaustive_cap)
            throw CapExceeded("minimality check exceeds the exhaustive cap");
        Counter counter(f, rest, per_removal_limit, nullptr);
        unsigned long long c = counter.prop.root_conflict() ? 0 : counter.count(0);
        rows.push_back({B[skip], c, per_removal_limit != 0 && c >= per_removal_limit});
    }
    return rows;
}

SearchResult search_optimal(const CnfFormula& f, int max_size, unsigned long long budget) {
    SearchResult result;
    Propagator prop(f);
    if (prop.root_conflict()) {
        result.backdoor = std::vector<int>{};
        result.subsets_checked = 1;
        return result;
    }
    unsigned long long pushes = 0;

    std::vector<int> chosen;
    // All-assignments-conflict check for the fixed subset `chosen`.
    auto subset_is_backdoor = [&](auto&& self, std::size_t depth) -> bool {
        if (depth == chosen.size())
            return false; // reached a UP-consistent full assignment
        int v = chosen[depth];
        for (int value = 0; value < 2; ++value) {
            std::int8_t have = prop.value(v);
            if (have != -1) {
                if (have == value && !self(self, depth + 1))
                    return false;
                continue;
            }
            ++pushes;
            bool ok = prop.assume(value ? v : -v);
            bool sub = ok ? self(self, depth + 1) : true;
            prop.pop();
            if (!sub)
                return false;
        }
        return true;
    };

    for (int size = 1; size <= max_size; ++size) {
        chosen.assign(static_cast<std::size_t>(size), 0);
        auto enumerate = [&](auto&& self, int pos, int start) -> bool {
            if (pos == size) {
                ++result.subsets_checked;
                if (budget && pushes > budget) {
                    result.budget_exceeded = true;
                    return true;
                }
                return subset_is_backdoor(subset_is_backdoor, 0);
            }
            for (int v = start; v <= f.nvars - (size - pos - 1); ++v) {
                chosen[static_cast<std::size_t>(pos)] = v;
                if (self(self, pos + 1, v + 1))
                    return true;
            }
            return false;
        };
        if (enumerate(enumerate, 0, 1)) {
            if (result.budget_exceeded)
                return result;
            result.backdoor = chosen;
            return result;
        }
    }
    return result;
}

} // namespace asymlab
