// Line-oriented text form of conic sets and formulations with exact "p/q"
// coefficient literals. Emission is deterministic: identical inputs produce
// byte-identical text, and emit(parse(emit(f))) == emit(f).
//
//   micp-conic 1
//   kind formulation            (or: kind set)
//   nx 1
//   ny 5                        (kind set carries a single "vars N" line)
//   nz 4
//   rows 17
//   blocks 3
//   block zero 0 7
//   block nonneg 7 14
//   block rlorentz 14 17
//   row <i> b <p/q> c <var> <p/q> ...
//
// Row i reads: value = sum of coef*var terms minus b.
#pragma once

#include "micprep/conic.hpp"

#include <sstream>
#include <string>
#include <variant>

namespace micprep::conic {

namespace detail {

inline std::string frac(const Q2& x) {
  if (!x.is_rational()) throw irrational_data("conic text requires rational data");
  return rat_num(x.u).str() + "/" + rat_den(x.u).str();
}

inline void emit_body(std::ostringstream& os, const LinConicSet& s) {
  os << "rows " << s.rows.size() << "\n";
  os << "blocks " << s.blocks.size() << "\n";
  for (const ConeBlock& b : s.blocks)
    os << "block " << cone_tag_name(b.tag) << " " << b.first << " " << b.count << "\n";
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    const AffineRow& row = s.rows[i];
    os << "row " << i << " b " << frac(row.constant);
    for (std::size_t j = 0; j < row.coeffs.size(); ++j)
      if (!(row.coeffs[j] == Q2{})) os << " c " << j << " " << frac(row.coeffs[j]);
    os << "\n";
  }
}

}  // namespace detail

inline std::string emit_conic_text(const LinConicSet& s) {
  s.validate();
  std::ostringstream os;
  os << "micp-conic 1\nkind set\nvars " << s.nvars << "\n";
  detail::emit_body(os, s);
  return os.str();
}

inline std::string emit_conic_text(const MicpFormulation& f) {
  f.validate();
  std::ostringstream os;
  os << "micp-conic 1\nkind formulation\nnx " << f.nx << "\nny " << f.ny << "\nnz " << f.nz
     << "\n";
  detail::emit_body(os, f.body);
  return os.str();
}

using ParsedConicText = std::variant<LinConicSet, MicpFormulation>;

inline ParsedConicText parse_conic_text(const std::string& text) {
  std::istringstream is(text);
  std::string word;
  auto expect = [&](const std::string& w) {
    if (!(is >> word) || word != w)
      throw std::invalid_argument("conic text: expected '" + w + "', got '" + word + "'");
  };
  auto read_size = [&] {
    std::size_t n;
    if (!(is >> n)) throw std::invalid_argument("conic text: expected a count");
    return n;
  };
  auto read_frac = [&] {
    if (!(is >> word)) throw std::invalid_argument("conic text: expected a fraction");
    return Q2{rat_from_string(word)};
  };

  expect("micp-conic");
  if (read_size() != 1) throw std::invalid_argument("conic text: unsupported version");
  expect("kind");
  if (!(is >> word)) throw std::invalid_argument("conic text: missing kind");
  bool formulation = word == "formulation";
  if (!formulation && word != "set") throw std::invalid_argument("conic text: bad kind " + word);

  std::size_t nx = 0, ny = 0, nz = 0, nvars = 0;
  if (formulation) {
    expect("nx");
    nx = read_size();
    expect("ny");
    ny = read_size();
    expect("nz");
    nz = read_size();
    nvars = nx + ny + nz;
  } else {
    expect("vars");
    nvars = read_size();
  }

  LinConicSet body;
  body.nvars = nvars;
  expect("rows");
  std::size_t nrows = read_size();
  expect("blocks");
  std::size_t nblocks = read_size();
  for (std::size_t k = 0; k < nblocks; ++k) {
    expect("block");
    if (!(is >> word)) throw std::invalid_argument("conic text: missing cone tag");
    auto tag = cone_tag_from_name(word);
    if (!tag) throw std::invalid_argument("conic text: unknown cone tag " + word);
    std::size_t first = read_size(), count = read_size();
    body.blocks.push_back({*tag, first, count});
  }
  body.rows.assign(nrows, AffineRow{});
  for (auto& row : body.rows) row.coeffs.assign(nvars, Q2{});
  for (std::size_t k = 0; k < nrows; ++k) {
    expect("row");
    std::size_t idx = read_size();
    if (idx >= nrows) throw std::invalid_argument("conic text: row index out of range");
    expect("b");
    body.rows[idx].constant = read_frac();
    while (is >> word) {
      if (word == "row") {
        is.seekg(-static_cast<std::streamoff>(word.size()), std::ios_base::cur);
        break;
      }
      if (word != "c") throw std::invalid_argument("conic text: expected 'c' or next row");
      std::size_t var = read_size();
      if (var >= nvars) throw std::invalid_argument("conic text: variable index out of range");
      body.rows[idx].coeffs[var] = read_frac();
    }
  }

  if (formulation) {
    MicpFormulation f;
    f.nx = nx;
    f.ny = ny;
    f.nz = nz;
    f.body = std::move(body);
    f.validate();
    return f;
  }
  body.validate();
  return body;
}

}  // namespace micprep::conic
