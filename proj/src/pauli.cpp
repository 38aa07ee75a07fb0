#include "hubsim/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hubsim {

void validate_pauli_letters(const std::string& letters) {
    for (char c : letters) {
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw std::invalid_argument("pauli letters must be one of I X Y Z, got '" +
                                        std::string(1, c) + "'");
        }
    }
}

uint64_t pauli_mask(const std::string& letters, char letter) {
    if (letters.size() > 64) throw std::invalid_argument("pauli_mask supports at most 64 qubits");
    uint64_t mask = 0;
    for (std::size_t k = 0; k < letters.size(); ++k) {
        if (letters[k] == letter) mask |= uint64_t(1) << k;
    }
    return mask;
}

PauliTermSum::PauliTermSum(std::size_t num_qubits) : num_qubits_(num_qubits) {}

void PauliTermSum::add(double coeff, const std::string& letters) {
    if (letters.size() != num_qubits_) {
        throw std::invalid_argument("pauli term has " + std::to_string(letters.size()) +
                                    " letters, expected " + std::to_string(num_qubits_));
    }
    validate_pauli_letters(letters);
    if (!std::isfinite(coeff)) throw std::invalid_argument("pauli coefficient must be finite");
    terms_.push_back({coeff, letters});
}

void PauliTermSum::add_at(double coeff, const std::vector<std::pair<std::size_t, char>>& ops) {
    std::string letters(num_qubits_, 'I');
    for (const auto& [qubit, letter] : ops) {
        if (qubit >= num_qubits_) throw std::invalid_argument("pauli op qubit out of range");
        letters[qubit] = letter;
    }
    add(coeff, letters);
}

void PauliTermSum::canonicalize() {
    // Sorting by (letters, coeff) before accumulating makes the merged sums
    // independent of insertion order, bit for bit.
    std::sort(terms_.begin(), terms_.end(), [](const PauliTerm& a, const PauliTerm& b) {
        return a.letters != b.letters ? a.letters < b.letters : a.coeff < b.coeff;
    });
    std::vector<PauliTerm> merged;
    for (const auto& term : terms_) {
        if (!merged.empty() && merged.back().letters == term.letters) {
            merged.back().coeff += term.coeff;
        } else {
            merged.push_back(term);
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const PauliTerm& t) { return t.coeff == 0.0; }),
                 merged.end());
    terms_ = std::move(merged);
}

double PauliTermSum::identity_coefficient() const {
    const std::string identity(num_qubits_, 'I');
    double coeff = 0.0;
    for (const auto& term : terms_) {
        if (term.letters == identity) coeff += term.coeff;
    }
    return coeff;
}

PauliTermSum PauliTermSum::without_identity() const {
    const std::string identity(num_qubits_, 'I');
    PauliTermSum out(num_qubits_);
    for (const auto& term : terms_) {
        if (term.letters != identity) out.terms_.push_back(term);
    }
    return out;
}

bool PauliTermSum::is_z_diagonal() const {
    for (const auto& term : terms_) {
        for (char c : term.letters) {
            if (c == 'X' || c == 'Y') return false;
        }
    }
    return true;
}

PauliTermSum& PauliTermSum::operator+=(const PauliTermSum& other) {
    if (other.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("cannot add pauli sums with different qubit counts");
    }
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    return *this;
}

PauliTermSum PauliTermSum::scaled(double factor) const {
    PauliTermSum out(num_qubits_);
    for (const auto& term : terms_) out.terms_.push_back({factor * term.coeff, term.letters});
    return out;
}

nlohmann::json PauliTermSum::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& term : terms_) {
        terms.push_back({{"coeff", term.coeff}, {"paulis", term.letters}});
    }
    return {{"qubits", num_qubits_}, {"terms", terms}};
}

PauliTermSum PauliTermSum::from_json(const nlohmann::json& j) {
    PauliTermSum out(j.at("qubits").get<std::size_t>());
    for (const auto& term : j.at("terms")) {
        out.add(term.at("coeff").get<double>(), term.at("paulis").get<std::string>());
    }
    return out;
}

bool PauliTermSum::operator==(const PauliTermSum& other) const {
    if (num_qubits_ != other.num_qubits_ || terms_.size() != other.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].coeff != other.terms_[i].coeff ||
            terms_[i].letters != other.terms_[i].letters) {
            return false;
        }
    }
    return true;
}

}  // namespace hubsim
