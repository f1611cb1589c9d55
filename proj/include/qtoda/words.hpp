#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace qtoda {

enum class DynkinType { A, C };

DynkinType parse_type(const std::string& s);
std::string type_name(DynkinType t);
// Cartan matrix C (0-based) with C * diag(d) symmetric.
std::vector<std::vector<int>> cartan_matrix(DynkinType t, int n);
std::vector<int> symmetrizer(DynkinType t, int n);

// Letters -k are the u-part (weight 1 chips), +k the v-part.
struct DoubleWord {
    int n = 0;
    std::vector<int> letters;

    friend bool operator==(const DoubleWord& a, const DoubleWord& b) { return a.n == b.n && a.letters == b.letters; }
    friend bool operator<(const DoubleWord& a, const DoubleWord& b) {
        return a.n != b.n ? a.n < b.n : a.letters < b.letters;
    }
};

// Stored in display order (Q_{n-1}, ..., Q_1).
using QuiverVector = std::vector<int>;
// Stored in display order (k_m, ..., k_1).
using IndexVector = std::vector<int>;

// Q_k for 1 <= k <= n-1, zero outside.
int q_entry(const QuiverVector& q, int k);
// k_i for 1 <= i <= m, zero outside.
int k_entry(const IndexVector& k, int i);
IndexVector negate(const IndexVector& k);

// Throws std::invalid_argument unless every |letter| in [1,n] appears once
// with each sign and -k precedes +k.
void validate_word(const DoubleWord& w);
bool is_valid_word(const DoubleWord& w);

// Stable partition to (-i_u, i_v) keeping the relative order of each part.
DoubleWord unmixed_form(const DoubleWord& w);
// Representative of the commutation class of w.
DoubleWord canonical_form(const DoubleWord& w);
bool commutation_equivalent(const DoubleWord& a, const DoubleWord& b);

std::vector<DoubleWord> enumerate_double_coxeter(int n);
QuiverVector quiver_vector_of(const DoubleWord& w);
DoubleWord word_of_quiver_vector(int n, const QuiverVector& q);
IndexVector index_vector_of(const QuiverVector& q);
DoubleWord standard_word(int n);
std::vector<QuiverVector> all_quiver_vectors(int n);

DoubleWord parse_word(int n, const std::string& text);
QuiverVector parse_vector(const std::string& text);
std::string to_string(const DoubleWord& w);
std::string vector_to_string(const std::vector<int>& v);
nlohmann::json to_json(const DoubleWord& w);

}  // namespace qtoda
