#include "hqaco/selector.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace hqaco {

namespace {

constexpr double kResidualFloor = 1e-12;
constexpr double kPi = 3.14159265358979323846;

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

AngleVector get_parameters(std::span<const double> amplitudes) {
    const std::size_t n = amplitudes.size();
    double norm_sq = 0.0;
    for (double a : amplitudes) {
        if (a < 0.0 || !std::isfinite(a)) {
            throw std::invalid_argument("amplitudes must be non-negative");
        }
        norm_sq += a * a;
    }
    if (std::abs(norm_sq - 1.0) > 1e-4) {
        throw std::invalid_argument("amplitude vector is not normalized");
    }
    if (n == 0) {
        return {};
    }

    // Work on a renormalized copy so rounding in the input does not leak
    // into the division cascade.
    const double norm = std::sqrt(norm_sq);
    std::vector<double> a(amplitudes.begin(), amplitudes.end());
    for (double& v : a) {
        v /= norm;
    }

    AngleVector angles;
    angles.reserve(n - 1);
    double residual = 1.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (residual < kResidualFloor) {
            // Everything left is padding; the remaining angles multiply a
            // zero prefix and are don't-cares.
            angles.resize(n - 1, 0.0);
            break;
        }
        const double ai = clamp01(a[i]);
        const double r = 2.0 * std::acos(ai);
        angles.push_back(r);
        const double s = std::sin(r / 2.0);
        if (s < kResidualFloor) {
            angles.resize(n - 1, 0.0);
            break;
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            a[j] /= s;
        }
        residual = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            residual += a[j] * a[j];
        }
    }
    angles.resize(n - 1, 0.0);
    return angles;
}

std::vector<double> reconstruct_amplitudes(std::span<const double> angles) {
    std::vector<double> amps;
    amps.reserve(angles.size() + 1);
    double sine_prefix = 1.0;
    for (double r : angles) {
        amps.push_back(sine_prefix * std::cos(r / 2.0));
        sine_prefix *= std::sin(r / 2.0);
    }
    amps.push_back(sine_prefix);
    return amps;
}

namespace {

// Emits the generator for `line_count` lines starting at `first_line`,
// consuming parameter slots from `first_param` and adding `extra_controls`
// to every gate (the controlled-copy rule for nested G2 blocks).
void append_generator(int first_line, int line_count, int first_param,
                      const std::vector<int>& extra_controls,
                      std::vector<ParamGate>& out) {
    auto with_extra = [&extra_controls](std::vector<int> controls) {
        controls.insert(controls.end(), extra_controls.begin(),
                        extra_controls.end());
        return controls;
    };
    auto rotation = [&](std::vector<int> controls, int target, int index,
                        double sign, double offset) {
        ParamGate gate;
        gate.controls = with_extra(std::move(controls));
        gate.kind = gate.controls.empty() ? GateKind::Ry : GateKind::CRy;
        gate.target = target;
        gate.angle_index = index;
        gate.sign = sign;
        gate.offset = offset;
        out.push_back(std::move(gate));
    };

    if (line_count == 1) {
        rotation({}, first_line, first_param, 1.0, 0.0);
        return;
    }
    if (line_count == 2) {
        const int top = first_line;
        const int bottom = first_line + 1;
        rotation({}, top, first_param, 1.0, 0.0);
        rotation({top}, bottom, first_param + 1, -1.0, 0.0);
        rotation({bottom}, top, first_param + 2, 1.0, kPi);
        return;
    }

    const int last_line = first_line + line_count - 1;
    const int half = 1 << (line_count - 1);

    append_generator(first_line, line_count - 1, first_param, extra_controls,
                     out);

    std::vector<int> upper_lines(static_cast<std::size_t>(line_count) - 1);
    std::iota(upper_lines.begin(), upper_lines.end(), first_line);
    rotation(upper_lines, last_line, first_param + half - 1, 1.0, 0.0);

    for (int target = last_line - 1; target >= first_line; --target) {
        ParamGate fan;
        fan.kind = GateKind::Cnot;
        fan.target = target;
        fan.controls = with_extra({last_line});
        out.push_back(std::move(fan));
    }

    std::vector<int> inner_extra = extra_controls;
    inner_extra.push_back(last_line);
    append_generator(first_line, line_count - 1, first_param + half,
                     inner_extra, out);
}

}  // namespace

SelectorCircuit::SelectorCircuit(int qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count < 1) {
        throw std::invalid_argument("qubit count must be at least 1");
    }
    append_generator(0, qubit_count, 0, {}, template_gates_);

    // Discover the measured-basis <-> candidate bijection empirically:
    // bind a strictly decreasing probe vector and rank the simulated
    // probabilities. Candidate i carries the i-th largest probe mass.
    const std::size_t dim = capacity();
    std::vector<double> probe(dim);
    double total = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        probe[i] = static_cast<double>(dim - i);
        total += probe[i];
    }
    for (double& p : probe) {
        p /= total;
    }
    std::vector<double> probe_amps(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        probe_amps[i] = std::sqrt(probe[i]);
    }
    const StateVector probed = run_circuit(bind(get_parameters(probe_amps)));

    std::vector<std::size_t> order(dim);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&probed](std::size_t a, std::size_t b) {
        return probed.probability(a) > probed.probability(b);
    });
    candidate_to_basis_ = order;
    basis_to_candidate_.assign(dim, 0);
    for (std::size_t candidate = 0; candidate < dim; ++candidate) {
        basis_to_candidate_[order[candidate]] = candidate;
    }
}

Circuit SelectorCircuit::bind(std::span<const double> angles) const {
    if (angles.size() != parameter_count()) {
        throw std::invalid_argument("angle count does not match circuit");
    }
    Circuit circuit;
    circuit.qubit_count = qubit_count_;
    circuit.gates.reserve(template_gates_.size());
    for (const ParamGate& slot : template_gates_) {
        GateOp gate;
        gate.kind = slot.kind;
        gate.target = slot.target;
        gate.controls = slot.controls;
        gate.theta = slot.angle_index < 0
                         ? 0.0
                         : slot.sign * angles[static_cast<std::size_t>(
                                           slot.angle_index)] +
                               slot.offset;
        circuit.gates.push_back(std::move(gate));
    }
    return circuit;
}

std::size_t SelectorCircuit::candidate_to_basis(std::size_t candidate) const {
    return candidate_to_basis_.at(candidate);
}

std::size_t SelectorCircuit::basis_to_candidate(std::size_t basis) const {
    return basis_to_candidate_.at(basis);
}

StateVector SelectorCircuit::prepare(std::span<const double> probabilities) const {
    if (probabilities.size() > capacity()) {
        throw std::invalid_argument("more candidates than the register holds");
    }
    if (probabilities.empty()) {
        throw std::invalid_argument("empty probability vector");
    }
    double sum = 0.0;
    for (double p : probabilities) {
        if (p < 0.0 || !std::isfinite(p)) {
            throw std::invalid_argument("probabilities must be non-negative");
        }
        sum += p;
    }
    if (sum == 0.0) {
        throw std::invalid_argument("all-zero probability vector");
    }
    if (std::abs(sum - 1.0) > 1e-6) {
        throw std::invalid_argument("probabilities do not sum to 1");
    }
    std::vector<double> amps(capacity(), 0.0);
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        amps[i] = std::sqrt(probabilities[i] / sum);
    }
    return run_circuit(bind(get_parameters(amps)));
}

std::size_t SelectorCircuit::select(std::span<const double> probabilities,
                                    int shots, std::mt19937_64& rng) const {
    if (shots < 1) {
        throw std::invalid_argument("shots must be at least 1");
    }
    const StateVector state = prepare(probabilities);
    const std::vector<std::size_t> measured = sample(state, shots, rng);

    std::vector<int> counts(probabilities.size(), 0);
    for (std::size_t basis : measured) {
        const std::size_t candidate = basis_to_candidate_[basis];
        // Candidates encoded with exactly zero probability are unreachable
        // up to rotation round-off; discard them so they can never win.
        if (candidate < counts.size() && probabilities[candidate] > 0.0) {
            ++counts[candidate];
        }
    }

    int best = 0;
    for (int c : counts) {
        best = std::max(best, c);
    }
    std::vector<std::size_t> tied;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (best > 0 && counts[i] == best) {
            tied.push_back(i);
        }
    }
    if (tied.empty()) {
        // Every shot landed on round-off mass; fall back to the mode.
        return static_cast<std::size_t>(
            std::max_element(probabilities.begin(), probabilities.end()) -
            probabilities.begin());
    }
    if (tied.size() == 1) {
        return tied.front();
    }
    return tied[static_cast<std::size_t>(uniform_unit(rng) *
                                         static_cast<double>(tied.size()))];
}

const SelectorCircuit& selector_for(int qubit_count) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<SelectorCircuit>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[qubit_count];
    if (!slot) {
        slot = std::make_unique<SelectorCircuit>(qubit_count);
    }
    return *slot;
}

}  // namespace hqaco
