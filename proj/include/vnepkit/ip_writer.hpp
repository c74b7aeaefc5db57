#pragma once

// Emits the decision integer program in CPLEX LP format: binary x indicating
// whether the request embeds, y variables for node placement, z variables for
// per-edge flow. Row families: c2 node embedding, c3 forbidden nodes, c4 flow
// conservation, c5 forbidden edges, c6/c7 capacities (only for enforced,
// finite capacities), c8star latencies (only when latencies are enforced).
//
// LP text has no rational literals. Coefficients with terminating decimal
// expansions are emitted exactly; otherwise the whole row is multiplied by
// the least common multiple of its denominators and emitted in integers.

#include <numeric>
#include <sstream>
#include <vector>

#include "vnepkit/validate.hpp"

namespace vnep {

// Percent-encoding keeps variable names unambiguous and LP-legal.
inline std::string lp_sanitize(const std::string& id) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  out.reserve(id.size());
  for (unsigned char c : id) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xF]);
    }
  }
  return out;
}

namespace detail {

struct LinTerm {
  std::string var;
  Rational coef;
};

inline std::string lp_var_y(const NodeId& i, const NodeId& u) {
  return "y_" + lp_sanitize(i) + "__" + lp_sanitize(u);
}
inline std::string lp_var_z(const EdgeId& ij, const EdgeId& uv) {
  return "z_" + lp_sanitize(ij.first) + "_" + lp_sanitize(ij.second) + "__" +
         lp_sanitize(uv.first) + "_" + lp_sanitize(uv.second);
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  return a / std::gcd(a, b) * b;
}

inline void append_wrapped(std::ostringstream& out, std::string& line, const std::string& token) {
  if (line.size() + token.size() > 200) {
    out << line << "\n";
    line = "    ";
  }
  line += token;
}

// One constraint row. Terms with zero coefficient are dropped; rows that end
// up empty are skipped entirely (their truth was checked by the caller).
inline void emit_row(std::ostringstream& out, const std::string& name,
                     std::vector<LinTerm> terms, const char* sense, Rational rhs) {
  std::vector<LinTerm> kept;
  for (auto& t : terms)
    if (!t.coef.is_zero()) kept.push_back(std::move(t));
  if (kept.empty()) return;

  bool decimal_ok = rhs.exact_decimal().has_value();
  for (const auto& t : kept) decimal_ok = decimal_ok && t.coef.exact_decimal().has_value();
  if (!decimal_ok) {
    std::int64_t scale = rhs.den();
    for (const auto& t : kept) scale = lcm64(scale, t.coef.den());
    Rational factor(scale);
    for (auto& t : kept) t.coef = t.coef * factor;
    rhs = rhs * factor;
  }

  auto coef_str = [](const Rational& r) {
    auto dec = r.exact_decimal();
    if (!dec) throw Error(ErrorKind::Internal, "row scaling failed to clear denominators");
    return *dec;
  };

  std::string line = " " + name + ":";
  bool first = true;
  for (const auto& t : kept) {
    std::string c = coef_str(t.coef);
    bool negative = c[0] == '-';
    if (negative) c = c.substr(1);
    std::string tok = negative ? " - " : (first ? " " : " + ");
    if (c != "1") tok += c + " ";
    tok += t.var;
    append_wrapped(out, line, tok);
    first = false;
  }
  append_wrapped(out, line, std::string(" ") + sense + " " + coef_str(rhs));
  out << line << "\n";
}

}  // namespace detail

inline std::string emit_ip(const VnepInstance& inst) {
  using detail::LinTerm;
  validate_instance(inst);
  const auto& sub = inst.substrate;
  const auto& req = inst.request;

  std::ostringstream out;
  out << "Maximize\n obj: x\nSubject To\n";

  // c2: each request node is mapped to exactly one substrate node iff x = 1.
  for (const auto& i : req.nodes) {
    std::vector<LinTerm> terms;
    for (const auto& u : sub.nodes) terms.push_back({detail::lp_var_y(i, u), Rational(1)});
    terms.push_back({"x", Rational(-1)});
    detail::emit_row(out, "c2_" + lp_sanitize(i), std::move(terms), "=", Rational(0));
  }

  // c3: placements outside the allowed set sum to zero.
  for (const auto& i : req.nodes) {
    const auto allowed = allowed_nodes(inst, i);
    std::vector<LinTerm> terms;
    for (const auto& u : sub.nodes)
      if (!allowed.count(u)) terms.push_back({detail::lp_var_y(i, u), Rational(1)});
    detail::emit_row(out, "c3_" + lp_sanitize(i), std::move(terms), "=", Rational(0));
  }

  // c4: unit flow for every request edge, per substrate node.
  for (const auto& ij : req.edges) {
    const std::string ij_name = lp_sanitize(ij.first) + "_" + lp_sanitize(ij.second);
    for (const auto& u : sub.nodes) {
      std::vector<LinTerm> terms;
      for (const auto& uv : sub.edges) {
        if (uv.first == u) terms.push_back({detail::lp_var_z(ij, uv), Rational(1)});
        if (uv.second == u) terms.push_back({detail::lp_var_z(ij, uv), Rational(-1)});
      }
      terms.push_back({detail::lp_var_y(ij.first, u), Rational(-1)});
      terms.push_back({detail::lp_var_y(ij.second, u), Rational(1)});
      detail::emit_row(out, "c4_" + ij_name + "__" + lp_sanitize(u), std::move(terms), "=",
                       Rational(0));
    }
  }

  // c5: flow on edges outside the allowed set sums to zero.
  for (const auto& ij : req.edges) {
    const auto allowed = allowed_edges(inst, ij);
    std::vector<LinTerm> terms;
    for (const auto& uv : sub.edges)
      if (!allowed.count(uv)) terms.push_back({detail::lp_var_z(ij, uv), Rational(1)});
    detail::emit_row(out, "c5_" + lp_sanitize(ij.first) + "_" + lp_sanitize(ij.second),
                     std::move(terms), "=", Rational(0));
  }

  // c6/c7: cumulative capacities, only where enforced and finite.
  if (inst.variant.node_capacities) {
    for (const auto& u : sub.nodes) {
      const Rational& cap = sub.capacity(u);
      if (cap.is_infinite()) continue;
      std::vector<LinTerm> terms;
      for (const auto& i : req.nodes)
        terms.push_back({detail::lp_var_y(i, u), req.demand(i)});
      detail::emit_row(out, "c6_" + lp_sanitize(u), std::move(terms), "<=", cap);
    }
  }
  if (inst.variant.edge_capacities) {
    for (const auto& uv : sub.edges) {
      const Rational& cap = sub.capacity(uv);
      if (cap.is_infinite()) continue;
      std::vector<LinTerm> terms;
      for (const auto& ij : req.edges)
        terms.push_back({detail::lp_var_z(ij, uv), req.demand(ij)});
      detail::emit_row(out, "c7_" + lp_sanitize(uv.first) + "_" + lp_sanitize(uv.second),
                       std::move(terms), "<=", cap);
    }
  }

  // c8star: latency rows (the starred constraint family).
  if (inst.variant.latency) {
    for (const auto& ij : req.edges) {
      const Rational& bound = req.latency_bound(ij);
      if (bound.is_infinite()) continue;
      std::vector<LinTerm> terms;
      for (const auto& uv : sub.edges)
        terms.push_back({detail::lp_var_z(ij, uv), sub.latency(uv)});
      detail::emit_row(out, "c8star_" + lp_sanitize(ij.first) + "_" + lp_sanitize(ij.second),
                       std::move(terms), "<=", bound);
    }
  }

  out << "Binary\n x\n";
  for (const auto& i : req.nodes)
    for (const auto& u : sub.nodes) out << " " << detail::lp_var_y(i, u) << "\n";
  for (const auto& ij : req.edges)
    for (const auto& uv : sub.edges) out << " " << detail::lp_var_z(ij, uv) << "\n";
  out << "End\n";
  return out.str();
}

}  // namespace vnep
