#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace hubsim {

// One weighted Pauli string; letters[k] in {I,X,Y,Z} acts on qubit k.
struct PauliTerm {
    double coeff = 0.0;
    std::string letters;
};

// Weighted sum of Pauli strings on a fixed qubit count. Canonical form:
// terms sorted lexicographically by letters, duplicates merged, exact-zero
// coefficients dropped. Identity terms are kept (they shift energy, not
// dynamics); without_identity() gives the traceless remainder.
class PauliTermSum {
public:
    explicit PauliTermSum(std::size_t num_qubits);

    std::size_t num_qubits() const { return num_qubits_; }

    // Adds coeff * letters; letters must have length num_qubits().
    void add(double coeff, const std::string& letters);
    // Adds coeff * (single letter at each listed qubit), identity elsewhere.
    void add_at(double coeff, const std::vector<std::pair<std::size_t, char>>& ops);

    // Sort / merge / drop zeros. Idempotent; result independent of insertion order.
    void canonicalize();

    const std::vector<PauliTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    double identity_coefficient() const;
    PauliTermSum without_identity() const;
    // True when every term uses only I and Z (diagonal in the computational basis).
    bool is_z_diagonal() const;

    PauliTermSum& operator+=(const PauliTermSum& other);
    PauliTermSum scaled(double factor) const;

    nlohmann::json to_json() const;
    static PauliTermSum from_json(const nlohmann::json& j);

    bool operator==(const PauliTermSum& other) const;

private:
    std::size_t num_qubits_;
    std::vector<PauliTerm> terms_;
};

// Throws std::invalid_argument unless every char is one of I X Y Z.
void validate_pauli_letters(const std::string& letters);

// Bit k set where letters[k] == letter. Requires letters.size() <= 64.
uint64_t pauli_mask(const std::string& letters, char letter);

}  // namespace hubsim
