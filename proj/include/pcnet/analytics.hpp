#pragma once

#include "pcnet/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pcnet {

// Normalized delivery time of the banded-network scheme. Requires
// K*mu + mt*L*ceil(K/L) to index an achievable corner, i.e. K*mu and
// mt*L integers; call sites interpolate otherwise.
Rat ndt_new(long K, long L, const Rat& mt, const Rat& mu);

// Baseline NDT at a memory corner mu = q/L, q in [0..L]. mt must make
// p = L*mt an integer in [1..L].
Rat ndt_xtz_corner(long K, long L, const Rat& mt, long q);

// Baseline NDT at arbitrary mu in [0,1] via memory sharing between the
// two adjacent corners q = floor(L*mu) and q+1 (the mu=1 endpoint has
// NDT zero).
Rat ndt_xtz(long K, long L, const Rat& mt, const Rat& mu);

// Baseline subpacketization at corner q = floor(L*mu) (three-branch
// formula; we take the smallest branch whose preconditions hold).
std::optional<BigInt> subpack_xtz(long K, long L, const Rat& mt, const Rat& mu);

// Subpacketizations of schemes 1..4. A scheme that does not apply to
// (K, L, mt, mu) yields nullopt.
struct SchemeSubpacks {
    std::optional<BigInt> s1, s2, s3, s4;
};
SchemeSubpacks subpack_new(long K, long L, const Rat& mt, const Rat& mu);

enum class Regime { EqualOptimal, Equal, NewSmaller, XtzSmaller, Unclassified };
std::string regime_name(Regime r);

// Which scheme achieves the smaller NDT, decided from the parameters
// alone (L = 1 is out of scope and reported Unclassified).
Regime classify_regime(long K, long L, const Rat& mt, const Rat& mu);

Rat dof_upper_bound(long K, long L, const Rat& mt, const Rat& mu);

struct ComparisonRecord {
    long K, L;
    Rat mt, mu;
    Rat tau_new, tau_xtz;
    SchemeSubpacks subs;
    std::optional<BigInt> f_xtz;
    Regime regime;
};

ComparisonRecord compare_point(long K, long L, const Rat& mt, const Rat& mu);

// Cartesian sweep over the given mt and mu grids.
std::vector<ComparisonRecord> sweep(long K, long L, const std::vector<Rat>& mts,
                                    const std::vector<Rat>& mus);

std::string records_to_csv(const std::vector<ComparisonRecord>& records);
std::string record_to_json(const ComparisonRecord& rec);

}  // namespace pcnet
