#include "curvedet/indexset.hpp"

#include <algorithm>

#include "curvedet/errors.hpp"

namespace curvedet {

bool strictly_increasing(const IndexSet& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i - 1] >= s[i]) return false;
  return s.empty() || s.front() >= 0;
}

std::string to_string(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

bool contains(const IndexSet& s, int j) {
  return std::binary_search(s.begin(), s.end(), j);
}

IndexSet erased(const IndexSet& s, int j) {
  require(contains(s, j), "invalid-argument", "erased: " + std::to_string(j) + " not in " + to_string(s));
  IndexSet out;
  out.reserve(s.size() - 1);
  for (int x : s)
    if (x != j) out.push_back(x);
  return out;
}

IndexSet inserted(const IndexSet& s, int j) {
  require(!contains(s, j), "invalid-argument", "inserted: " + std::to_string(j) + " already in " + to_string(s));
  IndexSet out = s;
  out.insert(std::upper_bound(out.begin(), out.end(), j), j);
  return out;
}

int removal_sign(const IndexSet& J, int j) {
  require(contains(J, j), "invalid-argument", "removal_sign: " + std::to_string(j) + " not in " + to_string(J));
  auto above = J.end() - std::upper_bound(J.begin(), J.end(), j);
  return (above % 2 == 0) ? 1 : -1;
}

IndexSet complement(const IndexSet& I, int d) {
  require(strictly_increasing(I), "invalid-argument", "complement: not an index set " + to_string(I));
  require(I.empty() || I.back() <= d, "invalid-argument", "complement: index exceeds d");
  IndexSet out;
  out.reserve(d + 1 - I.size());
  std::size_t pos = 0;
  for (int j = 0; j <= d; ++j) {
    if (pos < I.size() && I[pos] == j) {
      ++pos;
    } else {
      out.push_back(j);
    }
  }
  return out;
}

int complement_sign(const IndexSet& I, int d) {
  require(strictly_increasing(I), "invalid-argument", "complement_sign: not an index set " + to_string(I));
  require(I.empty() || I.back() <= d, "invalid-argument", "complement_sign: index exceeds d");
  // Inversions of the concatenation (I, I^c): each i in I counts the smaller
  // indices it jumped over, i.e. I[a] - a.
  long inv = 0;
  for (std::size_t a = 0; a < I.size(); ++a) inv += I[a] - static_cast<long>(a);
  return (inv % 2 == 0) ? 1 : -1;
}

std::vector<IndexSet> combinations(int d, int m) {
  std::vector<IndexSet> out;
  if (m < 0 || m > d + 1) return out;
  if (m == 0) return {IndexSet{}};
  IndexSet cur(m);
  for (int i = 0; i < m; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = m - 1;
    while (i >= 0 && cur[i] == d - (m - 1 - i)) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < m; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

}  // namespace curvedet
