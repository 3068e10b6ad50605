#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "flg/errors.hpp"

namespace flg {

enum class BusKind { Generator, Load };

struct Bus {
  int id = 0;
  BusKind kind = BusKind::Load;
  double gs = 0.0;  // shunt conductance to ground, p.u.
  double bs = 0.0;  // shunt susceptance to ground, p.u.

  friend bool operator==(const Bus&, const Bus&) = default;
};

struct Branch {
  int from_bus = 0;
  int to_bus = 0;
  double r = 0.0;          // series resistance, p.u.
  double x = 0.0;          // series reactance, p.u.
  double b = 0.0;          // total line-charging susceptance, p.u.
  double tap = 1.0;        // off-nominal turns ratio at the from end, > 0
  double shift_deg = 0.0;  // phase shift at the from end, degrees

  friend bool operator==(const Branch&, const Branch&) = default;
};

// A parsed network. Bus declaration order is preserved and fixes the row
// ordering of every matrix later derived from the case.
struct GridCase {
  std::string name;  // single whitespace-free token
  double base_mva = 100.0;
  std::vector<Bus> buses;
  std::vector<Branch> branches;

  const Bus* find_bus(int id) const;
  std::size_t generator_count() const;
  std::size_t load_count() const { return buses.size() - generator_count(); }

  friend bool operator==(const GridCase&, const GridCase&) = default;
};

// Parses the CASE text format:
//
//   CASE <name> BASEMVA <float>
//   BUS <id> <G|L> <gs> <bs>
//   BRANCH <from> <to> <r> <x> <b> [<tap> [<shift_deg>]]
//   END
//
// One record per line; all BUS records precede all BRANCH records; '#'
// starts a comment running to end of line; blank lines are ignored.
// Rejected with ParseError (offending line/column attached): unknown or
// out-of-order records, malformed or non-finite numbers, non-positive
// BASEMVA, duplicate bus ids, bus kinds other than G/L, branches that
// reference undeclared buses or form self-loops, negative r, (r, x) both
// zero, non-positive tap, cases without at least one generator and one
// load bus, content after END, and missing END.
GridCase parse_case(std::string_view text);

// Inverse of parse_case up to formatting: floats are emitted as shortest
// round-trip decimals, so parse_case(write_case(c)) == c for any valid c.
// tap is written only when the branch has an off-nominal tap or a phase
// shift; shift_deg only when nonzero.
std::string write_case(const GridCase& c);

}  // namespace flg
