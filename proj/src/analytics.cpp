#include "pcnet/analytics.hpp"

#include <nlohmann/json.hpp>

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pcnet {

namespace {

long ceil_div(long a, long b) { return (a + b - 1) / b; }

// K*mu as an integer, or -1 when mu is not at a 1/K corner.
long int_or_neg(const Rat& x) {
    return is_integer(x) ? rat_to_long(x) : -1;
}

long gcd3(long a, long b, long c) { return std::gcd(std::gcd(a, b), c); }

}  // namespace

Rat ndt_new(long K, long L, const Rat& mt, const Rat& mu) {
    if (K < 1 || L < 1 || mu < Rat(0) || mu > Rat(1) || mt <= Rat(0) || mt > Rat(1))
        throw std::invalid_argument("ndt_new: parameters out of range");
    if (!is_integer(mu * K) || !is_integer(mt * L))
        throw std::invalid_argument("ndt_new: (mt, mu) not at a corner point");
    Rat dof = mu * K + mt * Rat(L * ceil_div(K, L), 1);
    Rat denom = std::min(Rat(K, 1), dof);
    return Rat(K, 1) * (Rat(1) - mu) / denom;
}

Rat ndt_xtz_corner(long K, long L, const Rat& mt, long q) {
    (void)K;  // the baseline NDT does not depend on K
    if (!is_integer(mt * L))
        throw std::invalid_argument("ndt_xtz_corner: L*mt must be an integer");
    long p = rat_to_long(mt * L);
    if (p < 1 || p > L) throw std::invalid_argument("ndt_xtz_corner: L*mt out of [1..L]");
    if (q < 0 || q > L) throw std::invalid_argument("ndt_xtz_corner: corner index out of [0..L]");
    Rat mu(q, L);
    if (p == 1) return (Rat(1) - Rat(1, L) + Rat(1, q + 1)) * (Rat(1) - mu);
    return (Rat(1) - mu) / std::min(mt + mu, Rat(1));
}

Rat ndt_xtz(long K, long L, const Rat& mt, const Rat& mu) {
    if (mu < Rat(0) || mu > Rat(1)) throw std::invalid_argument("ndt_xtz: mu out of [0,1]");
    Rat lm = mu * L;
    if (is_integer(lm)) return ndt_xtz_corner(K, L, mt, rat_to_long(lm));
    long q = to_long(lm.numerator() / lm.denominator());
    Rat lambda = Rat(q + 1, 1) - lm;  // weight of the lower corner
    return lambda * ndt_xtz_corner(K, L, mt, q) +
           (Rat(1) - lambda) * ndt_xtz_corner(K, L, mt, q + 1);
}

std::optional<BigInt> subpack_xtz(long K, long L, const Rat& mt, const Rat& mu) {
    (void)K;
    if (!is_integer(mt * L)) return std::nullopt;
    long p = rat_to_long(mt * L);
    if (p < 1 || p > L) return std::nullopt;
    if (mu >= Rat(1)) return BigInt(1);
    // Off-corner mu: memory sharing stores the dominant lower corner q = floor(L*mu).
    Rat lm = mu * L;
    long q = to_long(lm.numerator() / lm.denominator());
    if (p == 1) return binomial(L, q) * L;
    if (mt + Rat(q, L) >= Rat(1)) return binomial(L, q) * (L - q);
    // Paper's printed third branch has a malformed binomial argument
    // ("L*mt*L - 1"); C(L-q-1, p-1) back-solves every tabulated value.
    return binomial(L, q) * binomial(L - q - 1, p - 1) * (L - q);
}

SchemeSubpacks subpack_new(long K, long L, const Rat& mt, const Rat& mu) {
    SchemeSubpacks out;
    long z = int_or_neg(mu * K);
    long r = int_or_neg(mt * Rat(L * ceil_div(K, L), 1));
    if (z < 0 || r < 0 || r < 1) return out;  // not at a corner of the construction

    long alpha = gcd3(K, z, r);  // std::gcd(x, 0) == x, so z = 0 is fine

    if (r >= z) {
        long dof = std::min(K, z + r);
        out.s1 = BigInt(L) * K * dof / (BigInt(alpha) * alpha);
    }
    if (z + r >= K) out.s2 = BigInt(L) * K;
    if (z + r < K) {
        // Scheme 3: minimize over admissible divisors m of K.
        std::optional<BigInt> best;
        for (long m = 1; m <= r; ++m) {
            if (K % m != 0 || z % m != 0) continue;
            long g = (r == m) ? m : std::gcd(m, r - m);
            long l = m / g;
            // sgn(z/m + 1, m/r) per the footnote: 1 when m = r, else z/m + 1
            long sgn = (m == r) ? 1 : z / m + 1;
            // beta = l * (sgn + (r - m)/m); l*(r-m)/m = (r-m)/g stays integral
            BigInt beta = BigInt(l) * sgn + (r - m) / g;
            BigInt f = BigInt(L) * beta * binomial(K / m, z / m);
            if (!best || f < *best) best = f;
        }
        out.s3 = best;
        out.s4 = BigInt(L) * ((z + r) / alpha) * binomial(K / alpha, (z + r) / alpha);
    }
    return out;
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::EqualOptimal: return "equal-optimal";
        case Regime::Equal: return "equal";
        case Regime::NewSmaller: return "new-smaller";
        case Regime::XtzSmaller: return "xtz-smaller";
        default: return "unclassified";
    }
}

Regime classify_regime(long K, long L, const Rat& mt, const Rat& mu) {
    if (L <= 1) return Regime::Unclassified;
    if (mu + mt >= Rat(1)) return Regime::EqualOptimal;
    Rat shifted = mu + mt * Rat(L * ceil_div(K, L), K);
    if (shifted >= Rat(1)) return Regime::NewSmaller;
    if (!is_integer(mt * L)) return Regime::Unclassified;
    long p = rat_to_long(mt * L);
    if (p >= 2 && p <= L - 1) return (K % L == 0) ? Regime::Equal : Regime::NewSmaller;
    if (p == 1) return Regime::XtzSmaller;
    return Regime::Unclassified;
}

Rat dof_upper_bound(long K, long L, const Rat& mt, const Rat& mu) {
    Rat r = mt * Rat(L * ceil_div(K, L), 1);
    return std::min(mu * K + r, Rat(K, 1));
}

ComparisonRecord compare_point(long K, long L, const Rat& mt, const Rat& mu) {
    ComparisonRecord rec;
    rec.K = K;
    rec.L = L;
    rec.mt = mt;
    rec.mu = mu;
    rec.tau_new = ndt_new(K, L, mt, mu);
    rec.tau_xtz = ndt_xtz(K, L, mt, mu);
    rec.subs = subpack_new(K, L, mt, mu);
    rec.f_xtz = subpack_xtz(K, L, mt, mu);
    rec.regime = classify_regime(K, L, mt, mu);
    return rec;
}

std::vector<ComparisonRecord> sweep(long K, long L, const std::vector<Rat>& mts,
                                    const std::vector<Rat>& mus) {
    std::vector<ComparisonRecord> out;
    for (const Rat& mt : mts)
        for (const Rat& mu : mus) out.push_back(compare_point(K, L, mt, mu));
    return out;
}

namespace {

std::string subpack_csv(const std::optional<BigInt>& f) {
    if (!f) return "-";
    if (*f >= BigInt(1000000)) return format_sci2(*f);
    return f->str();
}

}  // namespace

std::string records_to_csv(const std::vector<ComparisonRecord>& records) {
    std::ostringstream os;
    os << "K,L,mt,mu,tau_new,tau_xtz,F_scheme1,F_scheme2,F_scheme3,F_scheme4,F_xtz,regime\r\n";
    for (const ComparisonRecord& r : records) {
        os << r.K << ',' << r.L << ',' << format_rounded(r.mt, 6) << ','
           << format_rounded(r.mu, 6) << ',' << format_rounded(r.tau_new, 6) << ','
           << format_rounded(r.tau_xtz, 6) << ',' << subpack_csv(r.subs.s1) << ','
           << subpack_csv(r.subs.s2) << ',' << subpack_csv(r.subs.s3) << ','
           << subpack_csv(r.subs.s4) << ',' << subpack_csv(r.f_xtz) << ','
           << regime_name(r.regime) << "\r\n";
    }
    return os.str();
}

std::string record_to_json(const ComparisonRecord& rec) {
    nlohmann::json j;
    j["K"] = rec.K;
    j["L"] = rec.L;
    j["mt"] = rat_to_string(rec.mt);
    j["mu"] = rat_to_string(rec.mu);
    j["tau_new"] = rat_to_string(rec.tau_new);
    j["tau_xtz"] = rat_to_string(rec.tau_xtz);
    auto put = [&](const char* key, const std::optional<BigInt>& f) {
        if (f)
            j[key] = f->str();  // strings keep huge counts exact
        else
            j[key] = nullptr;
    };
    put("F_scheme1", rec.subs.s1);
    put("F_scheme2", rec.subs.s2);
    put("F_scheme3", rec.subs.s3);
    put("F_scheme4", rec.subs.s4);
    put("F_xtz", rec.f_xtz);
    j["regime"] = regime_name(rec.regime);
    return j.dump(2);
}

}  // namespace pcnet
