#include "hqaco/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hqaco {

namespace {

std::string trim(const std::string& s) {
    std::size_t first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return "";
    }
    std::size_t last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return s;
}

struct Line {
    std::string text;
    int number;
};

std::vector<Line> split_lines(const std::string& content) {
    std::vector<Line> lines;
    std::istringstream in(content);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        lines.push_back({raw, number});
    }
    return lines;
}

// Streams whitespace-separated numbers out of data-section lines while
// tracking the current line for error reports.
class NumberReader {
public:
    NumberReader(const std::vector<Line>& lines, std::size_t start)
        : lines_(lines), index_(start) {}

    bool next(double& value) {
        while (true) {
            if (token_ >= tokens_.size()) {
                if (!advance_line()) {
                    return false;
                }
                continue;
            }
            const std::string& tok = tokens_[token_];
            if (is_section_break(tok)) {
                return false;
            }
            ++token_;
            try {
                std::size_t used = 0;
                value = std::stod(tok, &used);
                if (used != tok.size()) {
                    throw std::invalid_argument(tok);
                }
            } catch (const std::exception&) {
                throw ParseError("expected a number, got '" + tok + "'",
                                 current_line_);
            }
            return true;
        }
    }

    std::size_t line_index() const { return index_; }
    int current_line() const { return current_line_; }

private:
    static bool is_section_break(const std::string& tok) {
        const std::string u = upper(tok);
        return u == "EOF" || u.find("SECTION") != std::string::npos ||
               u.find(':') != std::string::npos ||
               (!u.empty() && std::isalpha(static_cast<unsigned char>(u[0])));
    }

    bool advance_line() {
        tokens_.clear();
        token_ = 0;
        while (index_ < lines_.size()) {
            const Line& line = lines_[index_];
            std::istringstream in(line.text);
            std::string tok;
            while (in >> tok) {
                tokens_.push_back(tok);
            }
            current_line_ = line.number;
            ++index_;
            if (!tokens_.empty()) {
                return true;
            }
        }
        return false;
    }

    const std::vector<Line>& lines_;
    std::size_t index_;
    std::vector<std::string> tokens_;
    std::size_t token_ = 0;
    int current_line_ = 0;
};

void build_complete_adjacency(ProblemInstance& instance) {
    instance.adjacency.assign(static_cast<std::size_t>(instance.dimension), {});
    for (int i = 0; i < instance.dimension; ++i) {
        auto& list = instance.adjacency[static_cast<std::size_t>(i)];
        list.reserve(static_cast<std::size_t>(instance.dimension) - 1);
        for (int j = 0; j < instance.dimension; ++j) {
            if (j != i) {
                list.push_back(j);
            }
        }
    }
}

void set_cost(ProblemInstance& instance, int i, int j, double value) {
    const auto n = static_cast<std::size_t>(instance.dimension);
    instance.costs[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] = value;
    instance.costs[static_cast<std::size_t>(j) * n + static_cast<std::size_t>(i)] = value;
}

}  // namespace

bool ProblemInstance::has_edge(int a, int b) const {
    if (a == b) {
        return false;
    }
    const auto& list = adjacency[static_cast<std::size_t>(a)];
    return std::binary_search(list.begin(), list.end(), b);
}

int ProblemInstance::max_degree() const {
    std::size_t best = 0;
    for (const auto& list : adjacency) {
        best = std::max(best, list.size());
    }
    return static_cast<int>(best);
}

bool ProblemInstance::is_complete() const {
    for (const auto& list : adjacency) {
        if (static_cast<int>(list.size()) != dimension - 1) {
            return false;
        }
    }
    return true;
}

int geo_distance(double lat_a, double lon_a, double lat_b, double lon_b) {
    // TSPLIB pins this constant; using M_PI shifts rounded distances.
    constexpr double kTsplibPi = 3.141592;
    constexpr double kEarthRadius = 6378.388;
    auto to_radians = [](double degrees_minutes) {
        const double deg = std::round(degrees_minutes);
        const double min = degrees_minutes - deg;
        return kTsplibPi * (deg + 5.0 * min / 3.0) / 180.0;
    };
    const double lat1 = to_radians(lat_a);
    const double lon1 = to_radians(lon_a);
    const double lat2 = to_radians(lat_b);
    const double lon2 = to_radians(lon_b);
    const double q1 = std::cos(lon1 - lon2);
    const double q2 = std::cos(lat1 - lat2);
    const double q3 = std::cos(lat1 + lat2);
    double arg = 0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3);
    arg = std::min(1.0, std::max(-1.0, arg));
    return static_cast<int>(
        std::floor(kEarthRadius * std::acos(arg) + 1.0));
}

ProblemInstance parse_tsplib(const std::string& content) {
    const std::vector<Line> lines = split_lines(content);

    ProblemInstance instance;
    std::optional<EdgeWeightKind> weight_kind;
    std::string weight_type;
    std::string weight_format;
    std::size_t coord_section = lines.size();
    std::size_t weight_section = lines.size();

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string text = trim(lines[i].text);
        if (text.empty()) {
            continue;
        }
        const std::string utext = upper(text);
        if (utext == "NODE_COORD_SECTION") {
            coord_section = i + 1;
            continue;
        }
        if (utext == "EDGE_WEIGHT_SECTION") {
            weight_section = i + 1;
            continue;
        }
        if (utext == "DISPLAY_DATA_SECTION" || utext == "EOF") {
            continue;
        }
        const std::size_t colon = text.find(':');
        if (colon == std::string::npos) {
            continue;  // section payload, handled by the readers below
        }
        const std::string key = upper(trim(text.substr(0, colon)));
        const std::string value = trim(text.substr(colon + 1));
        if (key == "NAME") {
            instance.name = value;
        } else if (key == "TYPE") {
            if (upper(value) != "TSP") {
                throw UnsupportedFormatError("unsupported problem type: " + value);
            }
        } else if (key == "DIMENSION") {
            try {
                instance.dimension = std::stoi(value);
            } catch (const std::exception&) {
                throw ParseError("bad DIMENSION value '" + value + "'",
                                 lines[i].number);
            }
        } else if (key == "EDGE_WEIGHT_TYPE") {
            weight_type = upper(value);
        } else if (key == "EDGE_WEIGHT_FORMAT") {
            weight_format = upper(value);
        }
    }

    if (instance.dimension < 1) {
        throw ParseError("missing or invalid DIMENSION", 0);
    }
    if (weight_type == "GEO") {
        weight_kind = EdgeWeightKind::Geo;
    } else if (weight_type == "EXPLICIT") {
        if (weight_format == "FULL_MATRIX") {
            weight_kind = EdgeWeightKind::ExplicitFullMatrix;
        } else if (weight_format == "LOWER_DIAG_ROW") {
            weight_kind = EdgeWeightKind::ExplicitLowerDiagRow;
        } else if (weight_format == "UPPER_ROW") {
            weight_kind = EdgeWeightKind::ExplicitUpperRow;
        } else if (weight_format == "UPPER_DIAG_ROW") {
            weight_kind = EdgeWeightKind::ExplicitUpperDiagRow;
        } else {
            throw UnsupportedFormatError("unsupported EDGE_WEIGHT_FORMAT: " +
                                         weight_format);
        }
    } else {
        throw UnsupportedFormatError("unsupported EDGE_WEIGHT_TYPE: " +
                                     weight_type);
    }

    const int n = instance.dimension;
    instance.costs.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);

    if (*weight_kind == EdgeWeightKind::Geo) {
        if (coord_section >= lines.size()) {
            throw ParseError("missing NODE_COORD_SECTION", 0);
        }
        NumberReader reader(lines, coord_section);
        std::vector<double> lat(static_cast<std::size_t>(n));
        std::vector<double> lon(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            double index = 0;
            double x = 0;
            double y = 0;
            if (!reader.next(index) || !reader.next(x) || !reader.next(y)) {
                throw ParseError("truncated NODE_COORD_SECTION",
                                 reader.current_line());
            }
            const int node = static_cast<int>(index) - 1;
            if (node < 0 || node >= n) {
                throw ParseError("node index out of range",
                                 reader.current_line());
            }
            lat[static_cast<std::size_t>(node)] = x;
            lon[static_cast<std::size_t>(node)] = y;
        }
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                set_cost(instance, i, j,
                         geo_distance(lat[static_cast<std::size_t>(i)],
                                      lon[static_cast<std::size_t>(i)],
                                      lat[static_cast<std::size_t>(j)],
                                      lon[static_cast<std::size_t>(j)]));
            }
        }
    } else {
        if (weight_section >= lines.size()) {
            throw ParseError("missing EDGE_WEIGHT_SECTION", 0);
        }
        NumberReader reader(lines, weight_section);
        auto read_entry = [&reader]() {
            double value = 0;
            if (!reader.next(value)) {
                throw ParseError("truncated EDGE_WEIGHT_SECTION",
                                 reader.current_line());
            }
            return value;
        };
        switch (*weight_kind) {
            case EdgeWeightKind::ExplicitFullMatrix:
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j < n; ++j) {
                        const double value = read_entry();
                        if (i == j) {
                            if (value != 0.0) {
                                throw ParseError("nonzero diagonal entry",
                                                 reader.current_line());
                            }
                        } else if (j > i) {
                            set_cost(instance, i, j, value);
                        } else if (instance.cost(i, j) != value) {
                            throw ParseError("asymmetric FULL_MATRIX entry",
                                             reader.current_line());
                        }
                    }
                }
                break;
            case EdgeWeightKind::ExplicitLowerDiagRow:
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j <= i; ++j) {
                        const double value = read_entry();
                        if (i != j) {
                            set_cost(instance, i, j, value);
                        }
                    }
                }
                break;
            case EdgeWeightKind::ExplicitUpperRow:
                for (int i = 0; i < n; ++i) {
                    for (int j = i + 1; j < n; ++j) {
                        set_cost(instance, i, j, read_entry());
                    }
                }
                break;
            case EdgeWeightKind::ExplicitUpperDiagRow:
                for (int i = 0; i < n; ++i) {
                    for (int j = i; j < n; ++j) {
                        const double value = read_entry();
                        if (i != j) {
                            set_cost(instance, i, j, value);
                        }
                    }
                }
                break;
            case EdgeWeightKind::Geo:
                break;
        }
    }

    build_complete_adjacency(instance);
    instance.lower_bound = known_optimum(instance.name);
    return instance;
}

ProblemInstance load_sparse_graph(const std::string& content) {
    const std::vector<Line> lines = split_lines(content);
    ProblemInstance instance;
    instance.name = "sparse";
    bool have_count = false;

    struct Edge {
        int a;
        int b;
        double cost;
    };
    std::vector<Edge> edges;

    for (const Line& line : lines) {
        const std::string text = trim(line.text);
        if (text.empty() || text[0] == '#') {
            continue;
        }
        std::istringstream in(text);
        std::string tag;
        in >> tag;
        if (tag == "v") {
            if (!(in >> instance.dimension) || instance.dimension < 1) {
                throw ParseError("bad vertex count", line.number);
            }
            have_count = true;
        } else if (tag == "e") {
            Edge edge{};
            if (!(in >> edge.a >> edge.b >> edge.cost)) {
                throw ParseError("bad edge line", line.number);
            }
            if (!have_count) {
                throw ParseError("edge before vertex count", line.number);
            }
            if (edge.a == edge.b) {
                throw ParseError("self-loop edge", line.number);
            }
            if (edge.a < 0 || edge.b < 0 || edge.a >= instance.dimension ||
                edge.b >= instance.dimension) {
                throw ParseError("edge endpoint out of range", line.number);
            }
            if (edge.cost < 0.0) {
                throw ParseError("negative edge cost", line.number);
            }
            for (const Edge& seen : edges) {
                if ((seen.a == edge.a && seen.b == edge.b) ||
                    (seen.a == edge.b && seen.b == edge.a)) {
                    throw ParseError("duplicate edge", line.number);
                }
            }
            edges.push_back(edge);
        } else {
            throw ParseError("unknown record '" + tag + "'", line.number);
        }
    }
    if (!have_count) {
        throw ParseError("missing vertex count line", 0);
    }

    const auto n = static_cast<std::size_t>(instance.dimension);
    instance.costs.assign(n * n, 0.0);
    instance.adjacency.assign(n, {});
    for (const Edge& edge : edges) {
        set_cost(instance, edge.a, edge.b, edge.cost);
        instance.adjacency[static_cast<std::size_t>(edge.a)].push_back(edge.b);
        instance.adjacency[static_cast<std::size_t>(edge.b)].push_back(edge.a);
    }
    for (auto& list : instance.adjacency) {
        std::sort(list.begin(), list.end());
    }
    return instance;
}

ProblemInstance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open instance file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (path.size() >= 6 && path.substr(path.size() - 6) == ".graph") {
        return load_sparse_graph(buffer.str());
    }
    return parse_tsplib(buffer.str());
}

std::optional<double> known_optimum(const std::string& instance_name) {
    struct Entry {
        const char* name;
        double optimum;
    };
    static constexpr Entry kTable[] = {
        {"burma14", 3323.0}, {"gr17", 2085.0},   {"gr21", 2707.0},
        {"bayg29", 1610.0},  {"bays29", 2020.0},
    };
    for (const Entry& entry : kTable) {
        if (instance_name == entry.name) {
            return entry.optimum;
        }
    }
    return std::nullopt;
}

}  // namespace hqaco
