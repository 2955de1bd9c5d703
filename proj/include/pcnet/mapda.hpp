#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pcnet/numeric.hpp"

namespace pcnet {

/// One array cell: a star (cached) or a delivery block index in [1..S].
struct Cell {
    long value = 0;  // 0 encodes the star

    static Cell star() { return Cell{0}; }
    static Cell integer(long s) { return Cell{s}; }

    bool is_star() const { return value == 0; }
    bool is_integer() const { return value > 0; }

    bool operator==(const Cell&) const = default;
};

/// F x K grid of stars/integers with a declared antenna parameter r.
struct MapdaArray {
    long rows = 0;
    long cols = 0;
    long antennas = 1;  // the r parameter the array claims to satisfy
    std::vector<Cell> cells;  // row-major

    Cell& at(long f, long k) { return cells[f * cols + k]; }
    const Cell& at(long f, long k) const { return cells[f * cols + k]; }

    long max_integer() const;

    bool operator==(const MapdaArray&) const = default;
};

struct MapdaParams {
    long r = 0, K = 0, F = 0, Z = 0, S = 0;
    std::optional<long> regular_g;  // present iff every integer appears exactly g times
};

struct Violation {
    std::string condition;  // "C1".."C4" or "malformed"
    std::string detail;
    long row = -1, col = -1;  // 0-based where applicable, -1 if not
};

/// Checks Definition-1 conditions C1..C4 against the declared antenna count.
/// Returns the detected parameters, or the complete violation list.
std::variant<MapdaParams, std::vector<Violation>> verify_mapda(const MapdaArray& array);

struct Subarray {
    MapdaArray array;             // the Q^(s) grid; antennas copied from the parent
    std::vector<long> row_index;  // original 0-based row indices
    std::vector<long> col_index;  // original 0-based column indices
};

/// Q^(s): the rows and columns of `array` containing the integer s.
/// Throws std::out_of_range when s does not occur.
Subarray subarray_for_integer(const MapdaArray& array, long s);

/// Table I row 7 array: K x K, stars on z cyclic diagonals, integers 1..K-z
/// per column in increasing row order. Parameters (K-z, K, K, z, K-z), g = K.
MapdaArray gen_cyclic_mapda(long K, long z);

/// Classic r=1 PDA: rows are the z-subsets of [K] in lexicographic order,
/// integer cells carry the rank of the (z+1)-subset formed with the column.
MapdaArray gen_mn_pda(long K, long z);

/// Table I row 2 array: the MN PDA on K/r columns with parameter z/r, each
/// base column expanded into r identical columns; declared antennas r.
MapdaArray gen_grouping_mapda(long K, long z, long r);

struct CatalogResult {
    BigInt F, Z, S;
};

/// Closed-form (F, Z, S) of Table I row `row_index` at (K, z, r); row 5 also
/// takes m. Throws std::invalid_argument when the row's constraints fail.
CatalogResult catalog_params(int row_index, long K, long z, long r,
                             std::optional<long> m = std::nullopt);

/// Text format: optional "# r=<int>" header, then F lines of K tokens,
/// each "*" or a positive integer. '#' lines are comments.
MapdaArray read_mapda(std::istream& in);
MapdaArray read_mapda_string(const std::string& text);
MapdaArray read_mapda_file(const std::string& path);
std::string write_mapda(const MapdaArray& array);

}  // namespace pcnet
