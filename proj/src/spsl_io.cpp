#include "sps/spsl_io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace sps {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t number(std::string_view tok, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    fail(line, "expected a decimal number, got '" + std::string(tok) + "'");
  return v;
}

}  // namespace

Lattice parse_spsl(std::string_view text) {
  std::optional<std::size_t> n;
  bool header = false;
  std::vector<CoverPair> covers;
  std::vector<std::vector<ElementId>> lower, upper;
  std::vector<char> lower_seen, upper_seen;

  auto element = [&](std::string_view tok, std::size_t line) {
    const auto v = number(tok, line);
    if (!n) fail(line, "element id before 'n' directive");
    if (v >= *n) fail(line, "element id " + std::to_string(v) + " out of range");
    return static_cast<ElementId>(v);
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = tokens(line);
    if (tok.empty()) continue;

    if (!header) {
      if (tok.size() != 2 || tok[0] != "spsl" || tok[1] != "1") fail(line_no, "expected header 'spsl 1'");
      header = true;
      continue;
    }
    if (tok[0] == "n") {
      if (n) fail(line_no, "duplicate 'n' directive");
      if (tok.size() != 2) fail(line_no, "expected 'n <count>'");
      n = number(tok[1], line_no);
      if (*n == 0) fail(line_no, "lattice must have at least one element");
      lower.assign(*n, {});
      upper.assign(*n, {});
      lower_seen.assign(*n, 0);
      upper_seen.assign(*n, 0);
    } else if (tok[0] == "cover") {
      if (tok.size() != 3) fail(line_no, "expected 'cover <lower> <upper>'");
      covers.emplace_back(element(tok[1], line_no), element(tok[2], line_no));
    } else if (tok[0] == "up" || tok[0] == "down") {
      if (tok.size() < 3 || tok[2] != ":") fail(line_no, "expected '" + std::string(tok[0]) + " <elem> : ...'");
      const ElementId x = element(tok[1], line_no);
      auto& seen = tok[0] == "up" ? upper_seen : lower_seen;
      auto& order = tok[0] == "up" ? upper : lower;
      if (seen[x]) fail(line_no, "duplicate order line for element " + std::to_string(x));
      seen[x] = 1;
      for (std::size_t i = 3; i < tok.size(); ++i) order[x].push_back(element(tok[i], line_no));
    } else {
      fail(line_no, "unknown directive '" + std::string(tok[0]) + "'");
    }
  }
  if (!header) fail(line_no, "missing header 'spsl 1'");
  if (!n) fail(line_no, "missing 'n' directive");
  return Lattice::build(*n, covers, std::move(lower), std::move(upper));
}

std::string write_spsl(const Lattice& L) {
  std::ostringstream os;
  os << "spsl 1\n" << "n " << L.size() << "\n";
  for (auto [a, b] : L.cover_pairs()) os << "cover " << a << " " << b << "\n";
  for (ElementId x = 0; x < L.size(); ++x) {
    if (L.upper_covers(x).size() < 2) continue;
    os << "up " << x << " :";
    for (ElementId y : L.upper_covers(x)) os << " " << y;
    os << "\n";
  }
  for (ElementId x = 0; x < L.size(); ++x) {
    if (L.lower_covers(x).size() < 2) continue;
    os << "down " << x << " :";
    for (ElementId y : L.lower_covers(x)) os << " " << y;
    os << "\n";
  }
  return os.str();
}

Lattice read_spsl_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spsl(buf.str());
}

void write_spsl_file(const std::filesystem::path& path, const Lattice& L) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << write_spsl(L);
}

}  // namespace sps
