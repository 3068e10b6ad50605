#include "flg/case_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <unordered_set>

namespace flg {
namespace {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

int end_column(std::string_view line) { return static_cast<int>(line.size()) + 1; }

int parse_int(const Token& tok, int line) {
  int value = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ParseError(line, tok.column,
                     "expected integer, got '" + std::string(tok.text) + "'");
  return value;
}

double parse_float(const Token& tok, int line) {
  double value = 0.0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value))
    throw ParseError(line, tok.column,
                     "expected finite number, got '" + std::string(tok.text) + "'");
  return value;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

const Bus* GridCase::find_bus(int id) const {
  for (const Bus& b : buses)
    if (b.id == id) return &b;
  return nullptr;
}

std::size_t GridCase::generator_count() const {
  return static_cast<std::size_t>(
      std::count_if(buses.begin(), buses.end(),
                    [](const Bus& b) { return b.kind == BusKind::Generator; }));
}

GridCase parse_case(std::string_view text) {
  GridCase c;
  std::unordered_set<int> seen_ids;
  enum class Section { Header, Buses, Branches, Done };
  Section section = Section::Header;
  int lineno = 0;

  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);

    const std::vector<Token> toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string_view kw = toks[0].text;

    if (section == Section::Done)
      throw ParseError(lineno, toks[0].column, "content after END");

    if (section == Section::Header) {
      if (kw != "CASE")
        throw ParseError(lineno, toks[0].column,
                         "expected CASE header, got '" + std::string(kw) + "'");
      if (toks.size() != 4)
        throw ParseError(lineno, end_column(line),
                         "CASE record needs: CASE <name> BASEMVA <float>");
      if (toks[2].text != "BASEMVA")
        throw ParseError(lineno, toks[2].column,
                         "expected BASEMVA, got '" + std::string(toks[2].text) + "'");
      c.name = std::string(toks[1].text);
      c.base_mva = parse_float(toks[3], lineno);
      if (c.base_mva <= 0.0)
        throw ParseError(lineno, toks[3].column, "BASEMVA must be positive");
      section = Section::Buses;
    } else if (kw == "BUS") {
      if (section == Section::Branches)
        throw ParseError(lineno, toks[0].column, "BUS record after BRANCH records");
      if (toks.size() != 5)
        throw ParseError(lineno, end_column(line),
                         "BUS record needs: BUS <id> <G|L> <gs> <bs>");
      Bus bus;
      bus.id = parse_int(toks[1], lineno);
      if (toks[2].text == "G")
        bus.kind = BusKind::Generator;
      else if (toks[2].text == "L")
        bus.kind = BusKind::Load;
      else
        throw ParseError(lineno, toks[2].column, "bus kind must be G or L");
      bus.gs = parse_float(toks[3], lineno);
      bus.bs = parse_float(toks[4], lineno);
      if (!seen_ids.insert(bus.id).second)
        throw ParseError(lineno, toks[1].column,
                         "duplicate bus id " + std::to_string(bus.id));
      c.buses.push_back(bus);
    } else if (kw == "BRANCH") {
      if (section == Section::Buses) section = Section::Branches;
      if (toks.size() < 6 || toks.size() > 8)
        throw ParseError(
            lineno, end_column(line),
            "BRANCH record needs: BRANCH <from> <to> <r> <x> <b> [<tap> [<shift_deg>]]");
      Branch br;
      br.from_bus = parse_int(toks[1], lineno);
      br.to_bus = parse_int(toks[2], lineno);
      br.r = parse_float(toks[3], lineno);
      br.x = parse_float(toks[4], lineno);
      br.b = parse_float(toks[5], lineno);
      if (toks.size() >= 7) br.tap = parse_float(toks[6], lineno);
      if (toks.size() == 8) br.shift_deg = parse_float(toks[7], lineno);
      if (br.from_bus == br.to_bus)
        throw ParseError(lineno, toks[2].column, "self-loop branch (from == to)");
      if (!seen_ids.count(br.from_bus))
        throw ParseError(lineno, toks[1].column,
                         "branch references undeclared bus " + std::to_string(br.from_bus));
      if (!seen_ids.count(br.to_bus))
        throw ParseError(lineno, toks[2].column,
                         "branch references undeclared bus " + std::to_string(br.to_bus));
      if (br.r < 0.0)
        throw ParseError(lineno, toks[3].column, "negative series resistance");
      if (br.r == 0.0 && br.x == 0.0)
        throw ParseError(lineno, toks[3].column, "zero series impedance (r = x = 0)");
      if (toks.size() >= 7 && br.tap <= 0.0)
        throw ParseError(lineno, toks[6].column, "tap ratio must be positive");
      c.branches.push_back(br);
    } else if (kw == "END") {
      if (toks.size() != 1)
        throw ParseError(lineno, toks[1].column, "END takes no arguments");
      if (c.generator_count() == 0)
        throw ParseError(lineno, toks[0].column, "case declares no generator bus");
      if (c.load_count() == 0)
        throw ParseError(lineno, toks[0].column, "case declares no load bus");
      section = Section::Done;
    } else {
      throw ParseError(lineno, toks[0].column,
                       "unknown record '" + std::string(kw) + "'");
    }
  }

  if (section != Section::Done)
    throw ParseError(lineno + 1, 1, "missing END record");
  return c;
}

std::string write_case(const GridCase& c) {
  std::string out;
  out += "CASE " + c.name + " BASEMVA " + format_double(c.base_mva) + "\n";
  for (const Bus& b : c.buses) {
    out += "BUS " + std::to_string(b.id) +
           (b.kind == BusKind::Generator ? " G " : " L ") + format_double(b.gs) +
           " " + format_double(b.bs) + "\n";
  }
  for (const Branch& br : c.branches) {
    out += "BRANCH " + std::to_string(br.from_bus) + " " + std::to_string(br.to_bus) +
           " " + format_double(br.r) + " " + format_double(br.x) + " " +
           format_double(br.b);
    if (br.tap != 1.0 || br.shift_deg != 0.0) out += " " + format_double(br.tap);
    if (br.shift_deg != 0.0) out += " " + format_double(br.shift_deg);
    out += "\n";
  }
  out += "END\n";
  return out;
}

}  // namespace flg
