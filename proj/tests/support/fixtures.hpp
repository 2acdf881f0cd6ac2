#pragma once

#include <string>

#include "wquiv/error.hpp"
#include "wquiv/quiver.hpp"

namespace fixture {

inline wquiv::GroupElement el(const wquiv::GroupKind& kind, const std::string& text) {
  return wquiv::parse_element(kind, text);
}

// The left-hand quiver of the running example: a: 1->2, b: 2->3 and two
// parallel arrows c, d: 3->1, over free(1).
inline wquiv::WeightedQuiver running_example(const std::string& wa = "", const std::string& wb = "",
                                     const std::string& wc = "", const std::string& wd = "x1") {
  auto k = wquiv::GroupKind::free(1);
  wquiv::WeightedQuiver q(k);
  q.add_vertex(1).add_vertex(2).add_vertex(3);
  q.add_arrow_with_id(1, 1, 2, el(k, wa));
  q.add_arrow_with_id(2, 2, 3, el(k, wb));
  q.add_arrow_with_id(3, 3, 1, el(k, wc));
  q.add_arrow_with_id(4, 3, 1, el(k, wd));
  return q;
}

// Error code of the exception thrown by f, or "" if none is thrown.
template <class F>
std::string error_code(F&& f) {
  try {
    f();
  } catch (const wquiv::Error& e) {
    return e.code();
  }
  return {};
}

}  // namespace fixture
