#pragma once
// JSON (de)serialization for the domain types used by the command-line
// front end. Exact rationals serialize as canonical "p/q" strings so the
// emitted files are lossless golden data.

#include <asmtw/asm_matrix.hpp>
#include <asmtw/glauber.hpp>
#include <asmtw/goe.hpp>
#include <asmtw/gog_magog.hpp>
#include <asmtw/kernel.hpp>
#include <asmtw/saddle.hpp>
#include <asmtw/top_path.hpp>

#include <json.hpp>

namespace asmtw {

using Json = nlohmann::json;

inline Json to_json(const AsmMatrix& a) {
  return Json{{"type", "asm"}, {"n", a.n}, {"entries", a.entries}};
}

inline AsmMatrix asm_from_json(const Json& j) {
  return AsmMatrix(j.at("n").get<int>(), j.at("entries").get<std::vector<int>>());
}

inline Json to_json(const PcsmMatrix& c) {
  return Json{{"type", "pcsm"}, {"n", c.n}, {"entries", c.entries}};
}

inline PcsmMatrix pcsm_from_json(const Json& j) {
  return PcsmMatrix(j.at("n").get<int>(), j.at("entries").get<std::vector<int>>());
}

inline Json to_json(const GogTrapezoid& g) {
  return Json{{"type", "gog"}, {"n", g.n}, {"k", g.k}, {"rows", g.rows}};
}

inline Json to_json(const MagogTrapezoid& m) {
  return Json{{"type", "magog"}, {"n", m.n}, {"k", m.k}, {"rows", m.rows}};
}

inline Json to_json(const TopPath& t) {
  return Json{{"type", "top_path"}, {"n", t.n}, {"values", t.values}};
}

inline Json to_json(const KernelBlock& b) {
  return Json{{"x", b.x},
              {"y", b.y},
              {"f11", rat_to_string(b.f11)},
              {"f12", rat_to_string(b.f12)},
              {"f21", rat_to_string(b.f21)},
              {"f22", rat_to_string(b.f22)}};
}

inline Json to_json(const SaddleReport& r) {
  return Json{{"a", r.a},
              {"w_plus", {r.w_plus.real(), r.w_plus.imag()}},
              {"w_minus", {r.w_minus.real(), r.w_minus.imag()}},
              {"s1_dd_plus", r.s1_dd_plus},
              {"s1_dd_minus", r.s1_dd_minus},
              {"exponent", r.exponent}};
}

inline Json to_json(const F1Result& r) {
  return Json{{"s", r.s}, {"value", r.value}, {"error", r.error}};
}

inline Json to_json(const EmpiricalCdf& e) {
  return Json{{"count", e.count},
              {"center", e.center},
              {"scale", e.scale},
              {"ks_to_f1", e.ks_to_f1},
              {"values", e.values}};
}

}  // namespace asmtw
