#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcnet/scheme.hpp"

namespace pcnet {

/// Stateless counter-based generator: the value depends only on the inputs,
/// so channel sampling is reproducible under any execution order.
uint64_t counter_hash(uint64_t seed, uint64_t s, uint64_t k, uint64_t j);

/// Uniform draw in [1..1009] keyed by (seed, block, user, transmitter).
long channel_coefficient(uint64_t seed, long s, long k, long j);

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rat> {
    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }
    static Rat from_draw(long v) { return Rat(v); }
    static bool is_zero(const Rat& x) { return x == Rat(0); }
};

template <>
struct ScalarOps<std::complex<double>> {
    static constexpr double eps = 1e-9;
    static std::complex<double> zero() { return {0.0, 0.0}; }
    static std::complex<double> one() { return {1.0, 0.0}; }
    static std::complex<double> from_draw(long v) { return {v / 1009.0, (1009 - v + 1) / 1009.0}; }
    static bool is_zero(const std::complex<double>& x) { return std::abs(x) < eps; }
};

template <class S>
using Matrix = std::vector<std::vector<S>>;

/// K x (K+L-1) banded channel: h(k, j) is nonzero exactly when
/// j lies in [k .. k+L-1] (1-based).
template <class S>
Matrix<S> gen_channel(const NetworkConfig& net, uint64_t seed, long s) {
    Matrix<S> h(net.K, std::vector<S>(net.transmitters(), ScalarOps<S>::zero()));
    for (long k = 1; k <= net.K; ++k)
        for (long j = k; j <= k + net.L - 1; ++j)
            h[k - 1][j - 1] = ScalarOps<S>::from_draw(channel_coefficient(seed, s, k, j));
    return h;
}

struct Target {
    long user = 0;   // k_i, 1-based
    long layer = 0;  // l_i, 1-based
    long f = 0;      // f_i, 1-based within the layer
    long row = 0;    // 0-based row of P
};

struct DeliveryBlock {
    long s = 0;
    long layer = 0;
    std::vector<Target> targets;                    // ordered by user
    std::vector<long> support;                      // transmitter set T, 1-based, ascending
    std::vector<std::vector<long>> interference;    // P_i per target, users 1-based, ascending
};

/// All L*S1 blocks of the scheme: targets, common transmitter support, and
/// interference sets, with precoders left to the solver.
std::vector<DeliveryBlock> plan_blocks(const SchemePair& scheme, const std::vector<long>& demand);

struct InfeasibleSystem {
    long s = 0;               // block
    long i = 0;               // 1-based target index
    long generic_rank = 0;    // max bipartite matching users <-> in-window support
    std::vector<long> users;  // P_i
};

/// Certificates that no zero-forcing precoder can exist for any channel draw:
/// the generic rank of H(P_i, T) is the maximum matching between the users of
/// P_i and the support transmitters inside their connectivity windows. Every
/// returned entry has generic_rank < |P_i|. An empty result means the scheme
/// is structurally sound (rank failures can then only come from unlucky
/// draws, which resampling handles).
std::vector<InfeasibleSystem> structural_infeasibilities(const SchemePair& scheme);

/// Appendix-A greedy rule: assign each user of P_i the least unused support
/// transmitter inside its connectivity window. Empty optional on failure.
template <class S>
std::optional<std::vector<long>> find_nonzero_path(const Matrix<S>& h,
                                                   const std::vector<long>& users,
                                                   const std::vector<long>& support, long L) {
    std::vector<long> chosen;
    for (long k : users) {
        long pick = 0;
        for (long j : support) {
            if (j < k || j > k + L - 1) continue;
            if (std::find(chosen.begin(), chosen.end(), j) != chosen.end()) continue;
            pick = j;
            break;
        }
        if (pick == 0 || ScalarOps<S>::is_zero(h[k - 1][pick - 1])) return std::nullopt;
        chosen.push_back(pick);
    }
    return chosen;
}

/// Exact rank of h(users, support) via Gaussian elimination.
template <class S>
long submatrix_rank(const Matrix<S>& h, const std::vector<long>& users,
                    const std::vector<long>& support) {
    Matrix<S> m;
    for (long k : users) {
        std::vector<S> row;
        for (long j : support) row.push_back(h[k - 1][j - 1]);
        m.push_back(row);
    }
    long rank = 0;
    long cols = m.empty() ? 0 : static_cast<long>(m[0].size());
    for (long c = 0; c < cols && rank < static_cast<long>(m.size()); ++c) {
        long pivot = -1;
        for (long rrow = rank; rrow < static_cast<long>(m.size()); ++rrow)
            if (!ScalarOps<S>::is_zero(m[rrow][c])) {
                pivot = rrow;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        for (long rrow = rank + 1; rrow < static_cast<long>(m.size()); ++rrow) {
            if (ScalarOps<S>::is_zero(m[rrow][c])) continue;
            S factor = m[rrow][c] / m[rank][c];
            for (long cc = c; cc < cols; ++cc) m[rrow][cc] = m[rrow][cc] - factor * m[rank][cc];
        }
        ++rank;
    }
    return rank;
}

template <class S>
bool check_full_rank(const Matrix<S>& h, const std::vector<long>& users,
                     const std::vector<long>& support) {
    return submatrix_rank(h, users, support) == static_cast<long>(users.size());
}

struct PrecoderError {
    long s = 0;
    long i = 0;  // 1-based target index
    std::vector<long> interference;
    std::vector<long> support;
    std::string detail;
};

/// Solves h(P_i, T) v = e_i for every target; v supported on T, the
/// non-zero-path columns serve as pivots and remaining free variables are 0.
/// Returns the (K+L-1) x r_s precoding matrix.
template <class S>
std::variant<Matrix<S>, PrecoderError> solve_precoders(const DeliveryBlock& block,
                                                       const Matrix<S>& h, long L,
                                                       long transmitters) {
    const long r_s = static_cast<long>(block.targets.size());
    Matrix<S> v(transmitters, std::vector<S>(r_s, ScalarOps<S>::zero()));
    for (long i = 0; i < r_s; ++i) {
        const std::vector<long>& users = block.interference[i];
        auto path = find_nonzero_path(h, users, block.support, L);

        // Column order for elimination: path columns first, then the rest of T.
        std::vector<long> cols;
        if (path) cols = *path;
        for (long j : block.support)
            if (std::find(cols.begin(), cols.end(), j) == cols.end()) cols.push_back(j);

        const long nrows = static_cast<long>(users.size());
        const long ncols = static_cast<long>(cols.size());
        Matrix<S> aug(nrows, std::vector<S>(ncols + 1, ScalarOps<S>::zero()));
        for (long rrow = 0; rrow < nrows; ++rrow) {
            for (long cc = 0; cc < ncols; ++cc) aug[rrow][cc] = h[users[rrow] - 1][cols[cc] - 1];
            aug[rrow][ncols] =
                users[rrow] == block.targets[i].user ? ScalarOps<S>::one() : ScalarOps<S>::zero();
        }

        std::vector<long> pivot_col(nrows, -1);
        long rank = 0;
        for (long c = 0; c < ncols && rank < nrows; ++c) {
            long pivot = -1;
            for (long rrow = rank; rrow < nrows; ++rrow)
                if (!ScalarOps<S>::is_zero(aug[rrow][c])) {
                    pivot = rrow;
                    break;
                }
            if (pivot < 0) continue;
            std::swap(aug[rank], aug[pivot]);
            for (long rrow = 0; rrow < nrows; ++rrow) {
                if (rrow == rank || ScalarOps<S>::is_zero(aug[rrow][c])) continue;
                S factor = aug[rrow][c] / aug[rank][c];
                for (long cc = c; cc <= ncols; ++cc)
                    aug[rrow][cc] = aug[rrow][cc] - factor * aug[rank][cc];
            }
            pivot_col[rank] = c;
            ++rank;
        }
        if (rank < nrows) {
            PrecoderError err;
            err.s = block.s;
            err.i = i + 1;
            err.interference = users;
            err.support = block.support;
            err.detail = "channel submatrix is rank deficient (rank " + std::to_string(rank) +
                         " < " + std::to_string(nrows) + ")";
            return err;
        }
        for (long rrow = 0; rrow < nrows; ++rrow) {
            long c = pivot_col[rrow];
            v[cols[c] - 1][i] = aug[rrow][ncols] / aug[rrow][c];
        }
    }
    return v;
}

struct BlockCheck {
    bool pass = true;
    std::vector<std::pair<long, long>> violations;  // (i, i') 1-based
};

/// Decodability condition: R(i,i) = 1 and R(i,i') = 0 whenever target i's user
/// lies in P_{i'} \ {k_{i'}}; cached-interference entries are unconstrained.
template <class S>
BlockCheck verify_block(const DeliveryBlock& block, const Matrix<S>& h, const Matrix<S>& v,
                        long L) {
    BlockCheck out;
    const long r_s = static_cast<long>(block.targets.size());
    for (long i = 0; i < r_s; ++i) {
        long k_i = block.targets[i].user;
        for (long ip = 0; ip < r_s; ++ip) {
            S rval = ScalarOps<S>::zero();
            for (long j = k_i; j <= k_i + L - 1; ++j)
                rval = rval + h[k_i - 1][j - 1] * v[j - 1][ip];
            if (ip == i) {
                if (!ScalarOps<S>::is_zero(rval - ScalarOps<S>::one())) {
                    out.pass = false;
                    out.violations.emplace_back(i + 1, ip + 1);
                }
            } else {
                const auto& p_ip = block.interference[ip];
                bool constrained = std::find(p_ip.begin(), p_ip.end(), k_i) != p_ip.end() &&
                                   k_i != block.targets[ip].user;
                if (constrained && !ScalarOps<S>::is_zero(rval)) {
                    out.pass = false;
                    out.violations.emplace_back(i + 1, ip + 1);
                }
            }
        }
    }
    return out;
}

struct BlockReport {
    long s = 0;
    long layer = 0;
    std::vector<Target> targets;
    std::vector<long> support;
    bool pass = false;
    bool resampled = false;
    std::string note;
};

struct SimulationReport {
    bool ok = false;
    long blocks = 0;           // S = L*S1
    long subpacketization = 0; // F = L*F1
    Rat ndt;                   // S/F
    Rat sum_dof;               // K(1 - M_U/N)/ndt, 0 when no delivery happens
    Rat dof_bound;             // min{K*mu + r, K}
    std::vector<BlockReport> block_reports;
    std::vector<bool> decoded;  // per user
    std::string error;
};

enum class ScalarMode { Rational, Complex };

/// Full delivery simulation: plans blocks, samples channels, solves precoders,
/// verifies decodability, and replays symbol recovery for every user.
SimulationReport simulate(const SchemePair& scheme, const std::vector<long>& demand,
                          uint64_t seed, ScalarMode mode = ScalarMode::Rational);

std::string report_to_json(const SimulationReport& report, const SchemePair& scheme);

/// Default worst-case demand d_k = <k>_N.
std::vector<long> default_demand(const NetworkConfig& net);

}  // namespace pcnet
