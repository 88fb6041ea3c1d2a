#include "asymlab/pigeonhole.hpp"

#include <string>

namespace asymlab {

namespace {

std::string xvar(int pigeon, int hole) {
    return std::to_string(pigeon) + "_" + std::to_string(hole);
}

std::string pxvar(int pigeon, int hole) {
    return "p" + std::to_string(pigeon) + "_" + std::to_string(hole);
}

// Assignment variables for pigeons 1..n over holes 1..n-1, pigeons-major.
CnfFormula php_vars(int n) {
    CnfFormula f;
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n - 1; ++y)
            f.add_variable(xvar(x, y));
    return f;
}

int xv(int n, int x, int y) { return (x - 1) * (n - 1) + y; }

void add_pigeon_clauses(CnfFormula& f, int n) {
    for (int x = 1; x <= n; ++x) {
        std::vector<int> c;
        for (int y = 1; y <= n - 1; ++y)
            c.push_back(xv(n, x, y));
        f.add_clause(std::move(c));
    }
}

void add_exclusion_clauses(CnfFormula& f, int n) {
    for (int y = 1; y <= n - 1; ++y)
        for (int x = 1; x <= n; ++x)
            for (int x2 = x + 1; x2 <= n; ++x2)
                f.add_clause({-xv(n, x, y), -xv(n, x2, y)});
}

void add_functional_clauses(CnfFormula& f, int n) {
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n - 1; ++y)
            for (int y2 = y + 1; y2 <= n - 1; ++y2)
                f.add_clause({-xv(n, x, y), -xv(n, x, y2)});
}

void add_onto_clauses(CnfFormula& f, int n) {
    for (int y = 1; y <= n - 1; ++y) {
        std::vector<int> c;
        for (int x = 1; x <= n; ++x)
            c.push_back(xv(n, x, y));
        f.add_clause(std::move(c));
    }
}

void check_php_n(int n) {
    if (n < 2)
        throw InvalidParams("pigeonhole: n must be >= 2");
}

// Shared variable layout of the temporal family: the x block of php_vars
// followed by px variables for holes 2..n-1, pigeons-major.
CnfFormula tphp_vars(int n) {
    CnfFormula f = php_vars(n);
    for (int x = 1; x <= n; ++x)
        for (int y = 2; y <= n - 1; ++y)
            f.add_variable(pxvar(x, y));
    return f;
}

int pxv(int n, int x, int y) { return n * (n - 1) + (x - 1) * (n - 2) + (y - 1); }

void add_temporal_clauses(CnfFormula& f, int n) {
    add_exclusion_clauses(f, n);
    for (int x = 1; x <= n; ++x) {
        f.add_clause({xv(n, x, 1), -pxv(n, x, 2)});
        for (int y = 2; y <= n - 2; ++y)
            f.add_clause({xv(n, x, y), pxv(n, x, y), -pxv(n, x, y + 1)});
        f.add_clause({xv(n, x, n - 1), pxv(n, x, n - 1)});
    }
}

} // namespace

CnfFormula php(int n) {
    check_php_n(n);
    CnfFormula f = php_vars(n);
    add_pigeon_clauses(f, n);
    add_exclusion_clauses(f, n);
    return f;
}

CnfFormula fphp(int n) {
    CnfFormula f = php(n);
    add_functional_clauses(f, n);
    return f;
}

CnfFormula ophp(int n) {
    CnfFormula f = php(n);
    add_onto_clauses(f, n);
    return f;
}

CnfFormula ofphp(int n) {
    CnfFormula f = fphp(n);
    add_onto_clauses(f, n);
    return f;
}

CnfFormula tphp(int n) {
    if (n < 3)
        throw InvalidParams("tphp: n must be >= 3");
    CnfFormula f = tphp_vars(n);
    add_temporal_clauses(f, n);
    return f;
}

CnfFormula otphp(int n) {
    CnfFormula f = tphp(n);
    add_onto_clauses(f, n);
    return f;
}

CnfFormula map_tphp(int n) {
    CnfFormula f = tphp(n);
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n - 2; ++y) {
            std::vector<int> c{-xv(n, x, y + 1)};
            for (int x2 = 1; x2 <= n; ++x2)
                c.push_back(xv(n, x2, y));
            f.add_clause(std::move(c));
        }
    return f;
}

std::vector<std::vector<int>> naive_geq(const std::vector<int>& vars, int k, long clause_cap) {
    const int n = static_cast<int>(vars.size());
    if (k < 1 || k > n)
        throw InvalidParams("naive_geq: k out of range");
    const int pick = n - k + 1;
    // C(n, pick), guarded against the cap while accumulating.
    long count = 1;
    for (int i = 1; i <= pick; ++i) {
        count = count * (n - pick + i) / i;
        if (count > clause_cap)
            throw SizeGuard("naive GEQ expansion exceeds clause cap");
    }
    std::vector<std::vector<int>> out;
    std::vector<int> idx(static_cast<std::size_t>(pick));
    for (int i = 0; i < pick; ++i)
        idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        std::vector<int> clause;
        for (int i : idx)
            clause.push_back(vars[static_cast<std::size_t>(i)]);
        out.push_back(std::move(clause));
        int pos = pick - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - pick + pos)
            --pos;
        if (pos < 0)
            break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < pick; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
    return out;
}

CnfFormula sph(const SphParams& p) {
    if (p.n < 2)
        throw InvalidParams("sph: n must be >= 2");
    if (p.k < 1 || p.k > p.n)
        throw InvalidParams("sph: k must be within 1..n");

    CnfFormula f;
    // Pigeons 0..n over holes 1..n, pigeons-major.
    for (int x = 0; x <= p.n; ++x)
        for (int y = 1; y <= p.n; ++y)
            f.add_variable(xvar(x, y));
    auto v = [&](int x, int y) { return x * p.n + y; };

    // Every pigeon but the bad one needs a hole.
    for (int x = 1; x <= p.n; ++x) {
        std::vector<int> c;
        for (int y = 1; y <= p.n; ++y)
            c.push_back(v(x, y));
        f.add_clause(std::move(c));
    }
    // No two good/normal pigeons share a hole.
    for (int y = 1; y <= p.n; ++y)
        for (int x = 1; x <= p.n; ++x)
            for (int x2 = x + 1; x2 <= p.n; ++x2)
                f.add_clause({-v(x, y), -v(x2, y)});
    // Normal pigeons cannot share with the bad pigeon.
    for (int y = 1; y <= p.n; ++y)
        for (int x = p.k; x <= p.n; ++x)
            f.add_clause({-v(0, y), -v(x, y)});
    // The bad pigeon occupies at least k holes.
    std::vector<int> bad;
    for (int y = 1; y <= p.n; ++y)
        bad.push_back(v(0, y));
    for (auto& c : naive_geq(bad, p.k, p.clause_cap))
        f.add_clause(std::move(c));
    return f;
}

} // namespace asymlab
