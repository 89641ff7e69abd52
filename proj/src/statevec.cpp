#include "hqaco/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hqaco {

namespace {

// Mask of the basis-index bit owned by `qubit` (qubit 0 = MSB).
std::size_t qubit_bit(int qubit_count, int qubit) {
    return std::size_t{1} << (qubit_count - 1 - qubit);
}

void validate_gate(const GateOp& gate, int qubit_count) {
    auto in_range = [qubit_count](int q) { return q >= 0 && q < qubit_count; };
    if (!in_range(gate.target)) {
        throw std::invalid_argument("gate target out of range");
    }
    for (int c : gate.controls) {
        if (!in_range(c)) {
            throw std::invalid_argument("gate control out of range");
        }
        if (c == gate.target) {
            throw std::invalid_argument("gate control equals target");
        }
    }
    for (std::size_t i = 0; i + 1 < gate.controls.size(); ++i) {
        for (std::size_t j = i + 1; j < gate.controls.size(); ++j) {
            if (gate.controls[i] == gate.controls[j]) {
                throw std::invalid_argument("duplicate gate control");
            }
        }
    }
    switch (gate.kind) {
        case GateKind::Ry:
            if (!gate.controls.empty()) {
                throw std::invalid_argument("Ry takes no controls");
            }
            break;
        case GateKind::Cnot:
        case GateKind::CRy:
            if (gate.controls.empty()) {
                throw std::invalid_argument("controlled gate needs a control");
            }
            break;
    }
}

std::size_t control_mask(const GateOp& gate, int qubit_count) {
    std::size_t mask = 0;
    for (int c : gate.controls) {
        mask |= qubit_bit(qubit_count, c);
    }
    return mask;
}

}  // namespace

double StateVector::norm_squared() const {
    double total = 0.0;
    for (double a : amplitudes) {
        total += a * a;
    }
    return total;
}

double StateVector::probability(std::size_t basis_index) const {
    double a = amplitudes.at(basis_index);
    return a * a;
}

GateOp GateOp::ry(int target, double theta) {
    return GateOp{GateKind::Ry, target, {}, theta};
}

GateOp GateOp::cnot(int control, int target) {
    return GateOp{GateKind::Cnot, target, {control}, 0.0};
}

GateOp GateOp::cnot(std::vector<int> controls, int target) {
    return GateOp{GateKind::Cnot, target, std::move(controls), 0.0};
}

GateOp GateOp::cry(std::vector<int> controls, int target, double theta) {
    return GateOp{GateKind::CRy, target, std::move(controls), theta};
}

StateVector zero_state(int qubit_count) {
    if (qubit_count < 1) {
        throw std::invalid_argument("qubit count must be at least 1");
    }
    StateVector state;
    state.qubit_count = qubit_count;
    state.amplitudes.assign(std::size_t{1} << qubit_count, 0.0);
    state.amplitudes[0] = 1.0;
    return state;
}

void apply_gate(StateVector& state, const GateOp& gate) {
    validate_gate(gate, state.qubit_count);
    const std::size_t dim = state.dimension();
    const std::size_t tbit = qubit_bit(state.qubit_count, gate.target);
    const std::size_t cmask = control_mask(gate, state.qubit_count);
    auto& amp = state.amplitudes;

    if (gate.kind == GateKind::Cnot) {
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & tbit) == 0 && (i & cmask) == cmask) {
                std::swap(amp[i], amp[i | tbit]);
            }
        }
        return;
    }

    const double c = std::cos(gate.theta / 2.0);
    const double s = std::sin(gate.theta / 2.0);
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & tbit) == 0 && (i & cmask) == cmask) {
            const std::size_t j = i | tbit;
            const double a0 = amp[i];
            const double a1 = amp[j];
            amp[i] = c * a0 - s * a1;
            amp[j] = s * a0 + c * a1;
        }
    }
}

StateVector run_circuit(const Circuit& circuit) {
    StateVector state = zero_state(circuit.qubit_count);
    for (const GateOp& gate : circuit.gates) {
        apply_gate(state, gate);
    }
    return state;
}

double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<std::size_t> sample(const StateVector& state, int shots,
                                std::mt19937_64& rng) {
    if (shots < 1) {
        throw std::invalid_argument("shots must be at least 1");
    }
    const std::size_t dim = state.dimension();
    std::vector<double> cumulative(dim);
    double running = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double p = state.amplitudes[i] * state.amplitudes[i];
        if (p > 0.0) {
            last_nonzero = i;
        }
        running += p;
        cumulative[i] = running;
    }

    std::vector<std::size_t> indices;
    indices.reserve(static_cast<std::size_t>(shots));
    for (int shot = 0; shot < shots; ++shot) {
        const double r = uniform_unit(rng) * running;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
        std::size_t idx =
            it == cumulative.end()
                ? last_nonzero
                : static_cast<std::size_t>(it - cumulative.begin());
        // upper_bound skips zero-width (zero-probability) slots by
        // construction; clamp covers r landing past the final sum.
        indices.push_back(std::min(idx, last_nonzero));
    }
    return indices;
}

std::string format_gate_list(const Circuit& circuit) {
    std::ostringstream out;
    for (const GateOp& gate : circuit.gates) {
        switch (gate.kind) {
            case GateKind::Ry:
                out << "RY t=" << gate.target << " theta=" << gate.theta;
                break;
            case GateKind::Cnot:
                out << "CNOT c=";
                for (std::size_t i = 0; i < gate.controls.size(); ++i) {
                    out << (i ? "," : "") << gate.controls[i];
                }
                out << " t=" << gate.target;
                break;
            case GateKind::CRy:
                out << "CRY c=";
                for (std::size_t i = 0; i < gate.controls.size(); ++i) {
                    out << (i ? "," : "") << gate.controls[i];
                }
                out << " t=" << gate.target << " theta=" << gate.theta;
                break;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace hqaco
