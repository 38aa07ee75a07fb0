#include "hubsim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hubsim {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

const char* kKindNames[] = {"x", "sx", "h", "rx", "rz", "cnot", "cz", "swap", "rzz", "barrier"};

}  // namespace

const char* kind_name(GateKind kind) { return kKindNames[static_cast<int>(kind)]; }

GateKind kind_from_name(const std::string& name) {
    for (int k = 0; k <= static_cast<int>(GateKind::BARRIER); ++k) {
        if (name == kKindNames[k]) return static_cast<GateKind>(k);
    }
    throw std::invalid_argument("unknown gate kind '" + name + "'");
}

QuantumCircuit::QuantumCircuit(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1) throw std::invalid_argument("circuit needs at least one qubit");
}

void QuantumCircuit::append(const Gate& gate) {
    if (!gate.is_barrier()) {
        if (gate.q0 < 0 || gate.q0 >= num_qubits_) {
            throw std::invalid_argument("gate qubit out of range");
        }
        if (gate.is_two_qubit()) {
            if (gate.q1 < 0 || gate.q1 >= num_qubits_) {
                throw std::invalid_argument("gate qubit out of range");
            }
            if (gate.q1 == gate.q0) throw std::invalid_argument("two-qubit gate needs distinct qubits");
        }
        if (gate.has_angle() && !std::isfinite(gate.theta)) {
            throw std::invalid_argument("gate angle must be finite");
        }
    }
    gates_.push_back(gate);
}

void QuantumCircuit::append_circuit(const QuantumCircuit& other) {
    std::vector<int> identity(other.num_qubits());
    for (int k = 0; k < other.num_qubits(); ++k) identity[k] = k;
    append_circuit(other, identity);
}

void QuantumCircuit::append_circuit(const QuantumCircuit& other, const std::vector<int>& qubit_map) {
    if (static_cast<int>(qubit_map.size()) != other.num_qubits()) {
        throw std::invalid_argument("qubit map size must match embedded circuit width");
    }
    for (Gate gate : other.gates()) {
        if (!gate.is_barrier()) {
            gate.q0 = qubit_map.at(gate.q0);
            if (gate.is_two_qubit()) gate.q1 = qubit_map.at(gate.q1);
        }
        append(gate);
    }
}

namespace {

// ASAP layer index per gate; barriers get -1 and raise the floor.
std::vector<int> assign_layers(const QuantumCircuit& circuit, int* num_layers) {
    std::vector<int> busy(circuit.num_qubits(), 0);  // next free layer per qubit (1-based layers)
    std::vector<int> layers;
    layers.reserve(circuit.size());
    int floor = 0;
    int max_layer = 0;
    for (const Gate& gate : circuit.gates()) {
        if (gate.is_barrier()) {
            floor = max_layer;
            layers.push_back(-1);
            continue;
        }
        int layer = std::max(floor, busy[gate.q0]);
        if (gate.is_two_qubit()) layer = std::max(layer, busy[gate.q1]);
        ++layer;
        busy[gate.q0] = layer;
        if (gate.is_two_qubit()) busy[gate.q1] = layer;
        max_layer = std::max(max_layer, layer);
        layers.push_back(layer);
    }
    if (num_layers) *num_layers = max_layer;
    return layers;
}

}  // namespace

int depth(const QuantumCircuit& circuit) {
    int num_layers = 0;
    assign_layers(circuit, &num_layers);
    return num_layers;
}

int depth(const QuantumCircuit& circuit, const std::function<bool(const Gate&)>& filter) {
    int num_layers = 0;
    const std::vector<int> layers = assign_layers(circuit, &num_layers);
    std::vector<char> hit(static_cast<std::size_t>(num_layers) + 1, 0);
    const auto& gates = circuit.gates();
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (layers[i] > 0 && filter(gates[i])) hit[layers[i]] = 1;
    }
    return static_cast<int>(std::count(hit.begin(), hit.end(), 1));
}

int two_qubit_depth(const QuantumCircuit& circuit) {
    return depth(circuit, [](const Gate& g) { return g.is_two_qubit(); });
}

DepthReport gate_counts(const QuantumCircuit& circuit) {
    DepthReport report;
    report.total_depth = depth(circuit);
    report.twoq_depth = two_qubit_depth(circuit);
    for (const Gate& gate : circuit.gates()) {
        if (gate.is_barrier()) continue;
        ++report.counts[kind_name(gate.kind)];
        ++report.total_gates;
        if (gate.is_two_qubit()) ++report.twoq_gates;
    }
    return report;
}

nlohmann::json DepthReport::to_json() const {
    return {{"total_depth", total_depth},
            {"twoq_depth", twoq_depth},
            {"counts", counts},
            {"total_gates", total_gates},
            {"twoq_gates", twoq_gates}};
}

DepthReport DepthReport::from_json(const nlohmann::json& j) {
    DepthReport report;
    report.total_depth = j.value("total_depth", 0);
    report.twoq_depth = j.value("twoq_depth", 0);
    if (j.contains("counts")) report.counts = j.at("counts").get<std::map<std::string, long>>();
    report.total_gates = j.value("total_gates", 0L);
    report.twoq_gates = j.value("twoq_gates", 0L);
    return report;
}

namespace {

void emit_h(QuantumCircuit& out, int q) {
    out.append(Gate::rz(q, M_PI / 2.0));
    out.append(Gate::sx(q));
    out.append(Gate::rz(q, M_PI / 2.0));
}

void emit_cnot(QuantumCircuit& out, int control, int target) {
    emit_h(out, target);
    out.append(Gate::cz(control, target));
    emit_h(out, target);
}

}  // namespace

QuantumCircuit decompose_to_basis(const QuantumCircuit& circuit) {
    QuantumCircuit out(circuit.num_qubits());
    for (const Gate& gate : circuit.gates()) {
        switch (gate.kind) {
            case GateKind::X:
            case GateKind::SX:
            case GateKind::RX:
            case GateKind::RZ:
            case GateKind::CZ:
            case GateKind::RZZ:
                out.append(gate);
                break;
            case GateKind::H:
                emit_h(out, gate.q0);
                break;
            case GateKind::CNOT:
                emit_cnot(out, gate.q0, gate.q1);
                break;
            case GateKind::SWAP:
                emit_cnot(out, gate.q0, gate.q1);
                emit_cnot(out, gate.q1, gate.q0);
                emit_cnot(out, gate.q0, gate.q1);
                break;
            case GateKind::BARRIER:
                break;
        }
    }
    return out;
}

Eigen::Matrix2cd gate_matrix_1q(const Gate& gate) {
    Eigen::Matrix2cd m;
    switch (gate.kind) {
        case GateKind::X:
            m << 0, 1, 1, 0;
            return m;
        case GateKind::SX:
            m << 0.5 + 0.5 * kI, 0.5 - 0.5 * kI, 0.5 - 0.5 * kI, 0.5 + 0.5 * kI;
            return m;
        case GateKind::H:
            m << 1, 1, 1, -1;
            return m / std::sqrt(2.0);
        case GateKind::RX: {
            const double c = std::cos(gate.theta / 2.0), s = std::sin(gate.theta / 2.0);
            m << c, -kI * s, -kI * s, c;
            return m;
        }
        case GateKind::RZ:
            m << std::exp(-kI * (gate.theta / 2.0)), 0, 0, std::exp(kI * (gate.theta / 2.0));
            return m;
        default:
            throw std::invalid_argument("not a single-qubit gate");
    }
}

Eigen::Matrix4cd gate_matrix_2q(const Gate& gate) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    switch (gate.kind) {
        case GateKind::CNOT:
            // q0 = control (bit 0 of the index), q1 = target (bit 1).
            m(0, 0) = 1;
            m(3, 1) = 1;
            m(2, 2) = 1;
            m(1, 3) = 1;
            return m;
        case GateKind::CZ:
            m(0, 0) = 1;
            m(1, 1) = 1;
            m(2, 2) = 1;
            m(3, 3) = -1;
            return m;
        case GateKind::SWAP:
            m(0, 0) = 1;
            m(2, 1) = 1;
            m(1, 2) = 1;
            m(3, 3) = 1;
            return m;
        case GateKind::RZZ: {
            const std::complex<double> e_minus = std::exp(-kI * (gate.theta / 2.0));
            const std::complex<double> e_plus = std::exp(kI * (gate.theta / 2.0));
            m(0, 0) = e_minus;
            m(1, 1) = e_plus;
            m(2, 2) = e_plus;
            m(3, 3) = e_minus;
            return m;
        }
        default:
            throw std::invalid_argument("not a two-qubit gate");
    }
}

Eigen::MatrixXcd circuit_unitary(const QuantumCircuit& circuit) {
    if (circuit.num_qubits() > 10) {
        throw std::invalid_argument("circuit_unitary is limited to 10 qubits");
    }
    const std::size_t dim = std::size_t(1) << circuit.num_qubits();
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const Gate& gate : circuit.gates()) {
        if (gate.is_barrier()) continue;
        if (!gate.is_two_qubit()) {
            const Eigen::Matrix2cd g = gate_matrix_1q(gate);
            const std::size_t mask = std::size_t(1) << gate.q0;
            for (std::size_t col = 0; col < dim; ++col) {
                for (std::size_t i = 0; i < dim; ++i) {
                    if (i & mask) continue;
                    const std::complex<double> a0 = u(i, col);
                    const std::complex<double> a1 = u(i | mask, col);
                    u(i, col) = g(0, 0) * a0 + g(0, 1) * a1;
                    u(i | mask, col) = g(1, 0) * a0 + g(1, 1) * a1;
                }
            }
        } else {
            const Eigen::Matrix4cd g = gate_matrix_2q(gate);
            const std::size_t m0 = std::size_t(1) << gate.q0;
            const std::size_t m1 = std::size_t(1) << gate.q1;
            for (std::size_t col = 0; col < dim; ++col) {
                for (std::size_t i = 0; i < dim; ++i) {
                    if ((i & m0) || (i & m1)) continue;
                    std::complex<double> a[4] = {u(i, col), u(i | m0, col), u(i | m1, col),
                                                 u(i | m0 | m1, col)};
                    for (int r = 0; r < 4; ++r) {
                        std::size_t idx = i;
                        if (r & 1) idx |= m0;
                        if (r & 2) idx |= m1;
                        u(idx, col) = g(r, 0) * a[0] + g(r, 1) * a[1] + g(r, 2) * a[2] + g(r, 3) * a[3];
                    }
                }
            }
        }
    }
    return u;
}

std::string QuantumCircuit::to_text() const {
    std::ostringstream out;
    out << "qubits " << num_qubits_ << "\n";
    out.precision(17);
    for (const Gate& gate : gates_) {
        out << kind_name(gate.kind);
        if (!gate.is_barrier()) {
            out << " " << gate.q0;
            if (gate.is_two_qubit()) out << " " << gate.q1;
            if (gate.has_angle()) out << " " << gate.theta;
        }
        out << "\n";
    }
    return out.str();
}

QuantumCircuit QuantumCircuit::from_text(const std::string& text) {
    std::istringstream in(text);
    std::string head;
    int num_qubits = 0;
    if (!(in >> head >> num_qubits) || head != "qubits") {
        throw std::invalid_argument("circuit text must start with 'qubits N'");
    }
    QuantumCircuit circuit(num_qubits);
    std::string name;
    while (in >> name) {
        Gate gate;
        gate.kind = kind_from_name(name);
        if (!gate.is_barrier()) {
            if (!(in >> gate.q0)) throw std::invalid_argument("missing qubit for gate " + name);
            if (gate.is_two_qubit() && !(in >> gate.q1)) {
                throw std::invalid_argument("missing second qubit for gate " + name);
            }
            if (gate.has_angle() && !(in >> gate.theta)) {
                throw std::invalid_argument("missing angle for gate " + name);
            }
        }
        circuit.append(gate);
    }
    return circuit;
}

nlohmann::json QuantumCircuit::to_json() const {
    nlohmann::json gates = nlohmann::json::array();
    for (const Gate& gate : gates_) {
        nlohmann::json g{{"kind", kind_name(gate.kind)}};
        if (!gate.is_barrier()) {
            g["q0"] = gate.q0;
            if (gate.is_two_qubit()) g["q1"] = gate.q1;
            if (gate.has_angle()) g["theta"] = gate.theta;
        }
        gates.push_back(std::move(g));
    }
    return {{"qubits", num_qubits_}, {"gates", gates}};
}

QuantumCircuit QuantumCircuit::from_json(const nlohmann::json& j) {
    QuantumCircuit circuit(j.at("qubits").get<int>());
    for (const auto& g : j.at("gates")) {
        Gate gate;
        gate.kind = kind_from_name(g.at("kind").get<std::string>());
        if (!gate.is_barrier()) {
            gate.q0 = g.at("q0").get<int>();
            if (gate.is_two_qubit()) gate.q1 = g.at("q1").get<int>();
            if (gate.has_angle()) gate.theta = g.at("theta").get<double>();
        }
        circuit.append(gate);
    }
    return circuit;
}

}  // namespace hubsim
