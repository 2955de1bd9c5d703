#include "pcnet/mapda.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pcnet {

long MapdaArray::max_integer() const {
    long s = 0;
    for (const Cell& c : cells) s = std::max(s, c.value);
    return s;
}

std::variant<MapdaParams, std::vector<Violation>> verify_mapda(const MapdaArray& array) {
    std::vector<Violation> violations;
    const long F = array.rows, K = array.cols;
    if (F <= 0 || K <= 0 || static_cast<long>(array.cells.size()) != F * K) {
        violations.push_back({"malformed", "grid is empty or ragged", -1, -1});
        return violations;
    }
    if (array.antennas < 1) {
        violations.push_back({"malformed", "antenna parameter r must be positive", -1, -1});
        return violations;
    }

    const long S = array.max_integer();

    // C1: equal star count per column.
    std::vector<long> stars_per_col(K, 0);
    for (long f = 0; f < F; ++f)
        for (long k = 0; k < K; ++k)
            if (array.at(f, k).is_star()) ++stars_per_col[k];
    const long Z = stars_per_col[0];
    for (long k = 1; k < K; ++k)
        if (stars_per_col[k] != Z)
            violations.push_back({"C1",
                                  "column has " + std::to_string(stars_per_col[k]) +
                                      " stars, column 1 has " + std::to_string(Z),
                                  -1, k});

    // C2: every integer in [1..S] occurs.
    std::vector<long> occurrences(S + 1, 0);
    for (const Cell& c : array.cells)
        if (c.is_integer()) ++occurrences[c.value];
    for (long s = 1; s <= S; ++s)
        if (occurrences[s] == 0)
            violations.push_back({"C2", "integer " + std::to_string(s) + " never occurs", -1, -1});

    // C3: no integer twice in a column.
    for (long k = 0; k < K; ++k) {
        std::map<long, long> first_row;
        for (long f = 0; f < F; ++f) {
            const Cell& c = array.at(f, k);
            if (!c.is_integer()) continue;
            auto [it, inserted] = first_row.emplace(c.value, f);
            if (!inserted)
                violations.push_back({"C3",
                                      "integer " + std::to_string(c.value) +
                                          " repeats in column (rows " +
                                          std::to_string(it->second + 1) + "," +
                                          std::to_string(f + 1) + ")",
                                      f, k});
        }
    }

    // C4: each row of Q^(s) carries at most r integer entries.
    for (long s = 1; s <= S; ++s) {
        if (occurrences[s] == 0) continue;
        std::set<long> rows, cols;
        for (long f = 0; f < F; ++f)
            for (long k = 0; k < K; ++k)
                if (array.at(f, k).value == s) {
                    rows.insert(f);
                    cols.insert(k);
                }
        for (long f : rows) {
            long count = 0;
            for (long k : cols)
                if (array.at(f, k).is_integer()) ++count;
            if (count > array.antennas)
                violations.push_back({"C4",
                                      "row of Q^(" + std::to_string(s) + ") has " +
                                          std::to_string(count) + " integers > r=" +
                                          std::to_string(array.antennas),
                                      f, -1});
        }
    }

    if (!violations.empty()) return violations;

    MapdaParams params;
    params.r = array.antennas;
    params.K = K;
    params.F = F;
    params.Z = Z;
    params.S = S;
    if (S > 0) {
        long g = occurrences[1];
        bool regular = std::all_of(occurrences.begin() + 1, occurrences.end(),
                                   [g](long n) { return n == g; });
        if (regular) params.regular_g = g;
    }
    return params;
}

Subarray subarray_for_integer(const MapdaArray& array, long s) {
    std::vector<long> rows, cols;
    for (long f = 0; f < array.rows; ++f)
        for (long k = 0; k < array.cols; ++k)
            if (array.at(f, k).value == s) {
                rows.push_back(f);
                cols.push_back(k);
            }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    if (rows.empty())
        throw std::out_of_range("integer " + std::to_string(s) + " does not occur in the array");

    Subarray sub;
    sub.row_index = rows;
    sub.col_index = cols;
    sub.array.rows = static_cast<long>(rows.size());
    sub.array.cols = static_cast<long>(cols.size());
    sub.array.antennas = array.antennas;
    sub.array.cells.reserve(rows.size() * cols.size());
    for (long f : rows)
        for (long k : cols) sub.array.cells.push_back(array.at(f, k));
    return sub;
}

MapdaArray gen_cyclic_mapda(long K, long z) {
    if (z < 1 || z >= K)
        throw std::invalid_argument("gen_cyclic_mapda: need 1 <= z < K");
    MapdaArray a;
    a.rows = K;
    a.cols = K;
    a.antennas = K - z;
    a.cells.assign(K * K, Cell::star());
    for (long k = 0; k < K; ++k) {
        long next = 1;
        for (long f = 0; f < K; ++f) {
            long d = (f - k) % K;
            if (d < 0) d += K;
            if (d >= z) a.at(f, k) = Cell::integer(next++);
        }
    }
    return a;
}

namespace {

std::vector<std::vector<long>> subsets_lex(long n, long t) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur(t);
    // lexicographic enumeration of t-subsets of {1..n}
    std::function<void(long, long)> rec = [&](long start, long depth) {
        if (depth == t) {
            out.push_back(cur);
            return;
        }
        for (long v = start; v <= n - (t - depth - 1); ++v) {
            cur[depth] = v;
            rec(v + 1, depth + 1);
        }
    };
    rec(1, 0);
    return out;
}

}  // namespace

MapdaArray gen_mn_pda(long K, long z) {
    if (z < 1 || z >= K)
        throw std::invalid_argument("gen_mn_pda: need 0 < z < K");
    auto rows = subsets_lex(K, z);
    auto blocks = subsets_lex(K, z + 1);
    std::map<std::vector<long>, long> rank;  // (z+1)-subset -> 1-based lexicographic rank
    for (long i = 0; i < static_cast<long>(blocks.size()); ++i) rank[blocks[i]] = i + 1;

    MapdaArray a;
    a.rows = static_cast<long>(rows.size());
    a.cols = K;
    a.antennas = 1;
    a.cells.assign(a.rows * K, Cell::star());
    for (long f = 0; f < a.rows; ++f) {
        const auto& T = rows[f];
        for (long k = 1; k <= K; ++k) {
            if (std::binary_search(T.begin(), T.end(), k)) continue;
            std::vector<long> u = T;
            u.insert(std::lower_bound(u.begin(), u.end(), k), k);
            a.at(f, k - 1) = Cell::integer(rank.at(u));
        }
    }
    return a;
}

MapdaArray gen_grouping_mapda(long K, long z, long r) {
    if (r < 1 || K % r != 0 || z % r != 0 || z < 1 || z >= K)
        throw std::invalid_argument("gen_grouping_mapda: need r | K, r | z, 0 < z < K");
    MapdaArray base = gen_mn_pda(K / r, z / r);
    MapdaArray a;
    a.rows = base.rows;
    a.cols = K;
    a.antennas = r;
    a.cells.resize(a.rows * K);
    for (long f = 0; f < a.rows; ++f)
        for (long k = 0; k < K; ++k) a.at(f, k) = base.at(f, k / r);
    return a;
}

namespace {

BigInt exact_div(const BigInt& num, const BigInt& den, const char* what) {
    if (den == 0 || num % den != 0)
        throw std::invalid_argument(std::string("catalog_params: ") + what +
                                    " does not evaluate to an integer");
    return num / den;
}

long gcd3(long a, long b, long c) { return std::gcd(a, std::gcd(b, c)); }

// Table footnote: sgn(x, y) is 1 when y = 1 and x otherwise.
BigInt sgn_select(const BigInt& x, const Rat& y) { return y == Rat(1) ? BigInt(1) : x; }

}  // namespace

CatalogResult catalog_params(int row_index, long K, long z, long r, std::optional<long> m_opt) {
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw std::invalid_argument("catalog_params: infeasible: " + msg);
    };
    require(K >= 1 && r >= 1 && z >= 0, "need K,r >= 1 and z >= 0");
    CatalogResult out;
    switch (row_index) {
        case 1: {
            require(z + r <= K, "row 1 needs z + r <= K");
            BigInt common = factorial(z) * factorial(K - z - 1) / factorial(K - z - r);
            out.F = binomial(K, z) * common;
            out.Z = exact_div(binomial(K, z) * z * common, K, "Z");
            out.S = exact_div(BigInt(K - z) * common * binomial(K, z), r + z, "S");
            break;
        }
        case 2: {
            require(K % r == 0 && z % r == 0 && z >= 1, "row 2 needs r | K and r | z");
            out.F = binomial(K / r, z / r);
            out.Z = exact_div(out.F * z, K, "Z");
            out.S = binomial(K / r, z / r + 1);
            break;
        }
        case 3: {
            require(z + r <= K, "row 3 needs z + r <= K");
            out.F = binomial(K, z) * binomial(K - z - 1, r - 1);
            out.Z = exact_div(out.F * z, K, "Z");
            out.S = exact_div(BigInt(K - z) * out.F, r + z, "S");
            break;
        }
        case 4: {
            require((z + r) % (z + 1) == 0, "row 4 needs (z+r)/(z+1) integer");
            out.F = binomial(K, z);
            out.Z = exact_div(out.F * z, K, "Z");
            out.S = exact_div(BigInt(z + 1) * binomial(K, z + 1), z + r, "S");
            break;
        }
        case 5: {
            require(m_opt.has_value(), "row 5 needs the parameter m");
            long m = *m_opt;
            require(z + r < K && m >= 1 && m <= r, "row 5 needs z + r < K and m <= r");
            require(K % m == 0 && z % m == 0, "row 5 needs m | K and m | z");
            long l = m / std::gcd(m, r - m == 0 ? m : r - m);
            if (r == m) l = 1;  // gcd(m, 0) = m
            BigInt sgn = sgn_select(BigInt(z / m + 1), Rat(m, r));
            // beta = (sgn(z/m+1, m/r) + (r-m)/m) * l; must come out integral
            Rat beta_rat = (Rat(sgn, 1) + Rat(r - m, m)) * Rat(l, 1);
            require(is_integer(beta_rat), "row 5 beta is not an integer");
            BigInt beta = beta_rat.numerator();
            BigInt choose = binomial(K / m, z / m);
            out.F = beta * choose;
            out.Z = exact_div(beta * z * choose, K, "Z");
            out.S = exact_div(sgn * l * (K - z) * choose, z + m, "S");
            break;
        }
        case 6: {
            require(z + r <= K, "row 6 needs z + r <= K");
            long alpha = gcd3(K, z == 0 ? K : z, r);
            out.F = BigInt((z + r) / alpha) * binomial(K / alpha, (z + r) / alpha);
            out.Z = BigInt(z / alpha) * binomial(K / alpha - 1, (z + r) / alpha - 1);
            out.S = BigInt((K - z) / alpha) * binomial(K / alpha, (z + r) / alpha);
            break;
        }
        case 7: {
            require(r == K - z && z >= 0 && z < K, "row 7 needs r = K - z");
            out.F = K;
            out.Z = z;
            out.S = K - z;
            break;
        }
        case 8: {
            require(z <= r, "row 8 needs z <= r");
            long alpha = gcd3(K, z == 0 ? K : z, r);
            out.F = exact_div(BigInt(K) * (z + r), BigInt(alpha) * alpha, "F");
            out.Z = exact_div(BigInt(z) * (z + r), BigInt(alpha) * alpha, "Z");
            out.S = exact_div(BigInt(K) * (K - z), BigInt(alpha) * alpha, "S");
            break;
        }
        case 9: {
            bool ok = false;
            for (long n = 2; n * z <= K + r * (n - 1) && n <= K + 1; ++n)
                if (n * z + (n - 1) * r == K) ok = true;
            require(ok && r >= z, "row 9 needs K = nz + (n-1)r with n >= 2 and r >= z");
            long alpha = gcd3(K, z == 0 ? K : z, r);
            out.F = K / alpha;
            out.Z = z / alpha;
            out.S = (K - z) / alpha;
            break;
        }
        case 10: {
            require(r == K - z, "row 10 needs r = K - z");
            long alpha = gcd3(K, z == 0 ? K : z, r);
            out.F = K / alpha;
            out.Z = z / alpha;
            out.S = (K - z) / alpha;
            break;
        }
        default:
            throw std::invalid_argument("catalog_params: row index must be 1..10");
    }
    require(out.F > 0 && out.Z >= 0 && out.S >= 0, "parameters must be non-negative");
    return out;
}

MapdaArray read_mapda(std::istream& in) {
    MapdaArray a;
    a.antennas = 0;  // 0 = not declared; defaulted after parsing
    std::string line;
    long lineno = 0;
    std::vector<std::vector<Cell>> grid;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            auto eq = line.find("r=");
            if (eq != std::string::npos) {
                try {
                    a.antennas = std::stol(line.substr(eq + 2));
                } catch (const std::exception&) {
                    throw std::runtime_error("line " + std::to_string(lineno) +
                                             ": malformed r= header");
                }
            }
            continue;
        }
        std::istringstream ls(line);
        std::vector<Cell> row;
        std::string tok;
        while (ls >> tok) {
            if (tok == "*") {
                row.push_back(Cell::star());
            } else {
                long v = 0;
                size_t used = 0;
                try {
                    v = std::stol(tok, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != tok.size() || v < 1)
                    throw std::runtime_error("line " + std::to_string(lineno) + ": token '" + tok +
                                             "' is neither '*' nor a positive integer");
                row.push_back(Cell::integer(v));
            }
        }
        if (!grid.empty() && row.size() != grid.front().size())
            throw std::runtime_error("line " + std::to_string(lineno) + ": expected " +
                                     std::to_string(grid.front().size()) + " tokens, got " +
                                     std::to_string(row.size()));
        grid.push_back(std::move(row));
    }
    if (grid.empty()) throw std::runtime_error("empty array body");
    a.rows = static_cast<long>(grid.size());
    a.cols = static_cast<long>(grid.front().size());
    for (auto& row : grid) a.cells.insert(a.cells.end(), row.begin(), row.end());
    if (a.antennas == 0) a.antennas = a.cols;  // no header: K always satisfies C4
    return a;
}

MapdaArray read_mapda_string(const std::string& text) {
    std::istringstream in(text);
    return read_mapda(in);
}

MapdaArray read_mapda_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_mapda(in);
}

std::string write_mapda(const MapdaArray& array) {
    std::ostringstream os;
    os << "# r=" << array.antennas << "\n";
    for (long f = 0; f < array.rows; ++f) {
        for (long k = 0; k < array.cols; ++k) {
            if (k) os << ' ';
            const Cell& c = array.at(f, k);
            if (c.is_star())
                os << '*';
            else
                os << c.value;
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace pcnet
