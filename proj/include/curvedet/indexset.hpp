#pragma once

#include <string>
#include <vector>

namespace curvedet {

// Strictly increasing subset of {0, ..., d}.
using IndexSet = std::vector<int>;

bool strictly_increasing(const IndexSet& s);
std::string to_string(const IndexSet& s);

bool contains(const IndexSet& s, int j);
IndexSet erased(const IndexSet& s, int j);    // s \ {j}, requires j in s
IndexSet inserted(const IndexSet& s, int j);  // s U {j}, requires j not in s

// (-1)^{#{j' in J : j' > j}}; the sign of deleting e_j from e_J.
int removal_sign(const IndexSet& J, int j);

IndexSet complement(const IndexSet& I, int d);

// Sign s with e_I ^ e_{I^c} = s * e_0 ^ ... ^ e_d.
int complement_sign(const IndexSet& I, int d);

// All size-m subsets of {0..d}, lexicographic.
std::vector<IndexSet> combinations(int d, int m);

}  // namespace curvedet
