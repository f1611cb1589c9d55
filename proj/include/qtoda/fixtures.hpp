#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qtoda/algebra.hpp"
#include "qtoda/words.hpp"

namespace qtoda {

// Maps a symbol base and subscript list to a generator name, e.g. ("w",{1}) -> "w1".
using SymbolResolver = std::function<std::string(const std::string& base, const std::vector<int>& sub)>;

std::string lax_symbol(const std::string& base, const std::vector<int>& sub);    // w_i, D_i
std::string label_symbol(const std::string& base, const std::vector<int>& sub);  // X_{i,j}

// Parses sums like "w_1^{-1}w_2 + 2 D_1D_2^{-1}"; each product is taken in written order.
TorusElement parse_expression(const ContextPtr& ctx, const std::string& text, const SymbolResolver& resolve);

// Families of a displayed network sum, e.g. "X_{1,1}X_{2,2} + X_{1,2}" -> {{(1,1),(2,2)},{(1,2)}}.
std::vector<std::vector<std::pair<int, int>>> parse_label_families(const std::string& text);

struct GoldenList {
    std::string route;  // "network" or "lax"
    std::string key;    // word for network lists, index vector for Lax lists
    int index = 0;      // Hamiltonian index
    std::string text;
};

// The A_2 lists used as fixed expectations.
const std::vector<GoldenList>& a2_network_goldens();
const std::vector<GoldenList>& a2_lax_goldens();

// All fixed expectations with the way each is checked.
nlohmann::json seed_manifest();

}  // namespace qtoda
