#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hqaco {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line)
        : std::runtime_error(message + " (line " + std::to_string(line) + ")"),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class UnsupportedFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class EdgeWeightKind {
    ExplicitFullMatrix,
    ExplicitLowerDiagRow,
    ExplicitUpperRow,
    ExplicitUpperDiagRow,
    Geo,
};

/// A symmetric TSP instance. Immutable after load; freely shareable.
/// Absence from the adjacency lists is the only representation of a
/// non-traversable edge, so transition sums run over real neighbors only.
struct ProblemInstance {
    std::string name;
    int dimension = 0;
    std::vector<double> costs;                // dimension x dimension, row-major
    std::vector<std::vector<int>> adjacency;  // sorted neighbor lists
    std::optional<double> lower_bound;

    double cost(int a, int b) const {
        return costs[static_cast<std::size_t>(a) *
                         static_cast<std::size_t>(dimension) +
                     static_cast<std::size_t>(b)];
    }
    bool has_edge(int a, int b) const;
    const std::vector<int>& neighbors(int node) const {
        return adjacency[static_cast<std::size_t>(node)];
    }
    int max_degree() const;
    bool is_complete() const;
};

/// Parses the TSPLIB subset needed here: EXPLICIT matrices in FULL_MATRIX,
/// LOWER_DIAG_ROW, UPPER_ROW or UPPER_DIAG_ROW layout, and GEO instances.
/// Any other EDGE_WEIGHT_TYPE/FORMAT raises UnsupportedFormatError;
/// truncated or malformed data raises ParseError with the line number.
ProblemInstance parse_tsplib(const std::string& content);

/// TSPLIB geographical distance between two (latitude, longitude) pairs in
/// degrees: coordinates are converted with deg = nint(x), min = x - deg,
/// rad = PI*(deg + 5*min/3)/180 using PI = 3.141592, and the distance is
/// floor(RRR*acos(0.5*((1+q1)*q2 - (1-q1)*q3)) + 1) with RRR = 6378.388.
/// The acos argument is clamped to [-1, 1].
int geo_distance(double lat_a, double lon_a, double lat_b, double lon_b);

/// Loads the custom sparse format: `v <count>` then `e <i> <j> <cost>`
/// lines (0-indexed, undirected); `#` starts a comment line.
/// Duplicate or self-loop edges raise ParseError.
ProblemInstance load_sparse_graph(const std::string& content);

/// Reads a file and dispatches on extension: `.tsp` to parse_tsplib,
/// `.graph` to load_sparse_graph.
ProblemInstance load_instance_file(const std::string& path);

/// Published optimal tour length for the benchmark instances, by name.
std::optional<double> known_optimum(const std::string& instance_name);

}  // namespace hqaco
