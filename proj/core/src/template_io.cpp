#include <charconv>
#include <fstream>
#include <sstream>

#include "knotflow/error.hpp"
#include "knotflow/template.hpp"

namespace knotflow {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

[[noreturn]] void fail(int line_no, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + msg);
}

bool valid_id(std::string_view id) {
  if (id.empty()) return false;
  for (char c : id)
    if (c == '.' || c == ',' || c == '/' || c == '=' || c == '#' || c == ' ' || c == '\t') return false;
  return true;
}

std::string require_id(std::string_view id, int line_no) {
  if (!valid_id(id)) fail(line_no, "invalid identifier '" + std::string(id) + "'");
  return std::string(id);
}

int parse_int(std::string_view s, int line_no) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) fail(line_no, "bad integer '" + std::string(s) + "'");
  return v;
}

std::string_view value_of(std::string_view token, std::string_view key, int line_no) {
  if (token.substr(0, key.size()) != key || token.size() < key.size() + 1 || token[key.size()] != '=')
    fail(line_no, "expected " + std::string(key) + "=...");
  return token.substr(key.size() + 1);
}

SlotRef parse_slot(std::string_view s, int line_no) {
  auto dot = s.rfind('.');
  if (dot == std::string_view::npos) fail(line_no, "expected <line>.<slot>");
  return {require_id(s.substr(0, dot), line_no), parse_int(s.substr(dot + 1), line_no)};
}

std::string signed_int(int v) { return (v > 0 ? "+" : "") + std::to_string(v); }

}  // namespace

std::string serialize(const Template& t) {
  std::ostringstream os;
  for (const auto& line : t.branch_lines)
    os << "branchline " << line.id << " out=" << join(line.out_slots, ',') << " in=" << join(line.in_slots, ',')
       << "\n";
  for (const auto& s : t.strips)
    os << "strip " << s.id << " " << s.source.line << "." << s.source.slot << " -> " << s.target.line << "."
       << s.target.slot << " halftwists=" << s.half_twists << "\n";
  for (const auto& x : t.crossings)
    os << "crossing " << x.over << "/" << x.under << " sign=" << signed_int(x.sign) << " pos=" << x.over_pos << ","
       << x.under_pos << "\n";
  if (t.carrier == Carrier::Trefoil) os << "carrier trefoil\n";
  return os.str();
}

Template parse_template(std::string_view text) {
  Template t;
  int line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::istringstream is{std::string(line)};
    std::vector<std::string> tok;
    for (std::string w; is >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    const auto& kind = tok[0];
    if (kind == "branchline") {
      if (tok.size() != 4) fail(line_no, "branchline <id> out=<ids> in=<ids>");
      BranchLine bl;
      bl.id = require_id(tok[1], line_no);
      for (const auto& id : split(value_of(tok[2], "out", line_no), ',')) bl.out_slots.push_back(require_id(id, line_no));
      for (const auto& id : split(value_of(tok[3], "in", line_no), ',')) bl.in_slots.push_back(require_id(id, line_no));
      t.branch_lines.push_back(std::move(bl));
    } else if (kind == "strip") {
      if (tok.size() != 6 || tok[3] != "->") fail(line_no, "strip <id> <line>.<slot> -> <line>.<slot> halftwists=<int>");
      Strip s;
      s.id = require_id(tok[1], line_no);
      s.source = parse_slot(tok[2], line_no);
      s.target = parse_slot(tok[4], line_no);
      s.half_twists = parse_int(value_of(tok[5], "halftwists", line_no), line_no);
      t.strips.push_back(std::move(s));
    } else if (kind == "crossing") {
      if (tok.size() != 4) fail(line_no, "crossing <over>/<under> sign=<+-1> pos=<int>,<int>");
      auto ids = split(tok[1], '/');
      if (ids.size() != 2) fail(line_no, "expected <over>/<under>");
      Crossing x;
      x.over = require_id(ids[0], line_no);
      x.under = require_id(ids[1], line_no);
      x.sign = parse_int(value_of(tok[2], "sign", line_no), line_no);
      auto pos = split(value_of(tok[3], "pos", line_no), ',');
      if (pos.size() != 2) fail(line_no, "expected pos=<int>,<int>");
      x.over_pos = parse_int(pos[0], line_no);
      x.under_pos = parse_int(pos[1], line_no);
      t.crossings.push_back(std::move(x));
    } else if (kind == "carrier") {
      if (tok.size() != 2) fail(line_no, "carrier <unknot|trefoil>");
      if (tok[1] == "unknot")
        t.carrier = Carrier::Unknot;
      else if (tok[1] == "trefoil")
        t.carrier = Carrier::Trefoil;
      else
        fail(line_no, "unknown carrier " + tok[1]);
    } else {
      fail(line_no, "unknown record '" + kind + "'");
    }
  }
  return t;
}

Template load_template(const std::string& name_or_path) {
  if (name_or_path == "lorenz") return lorenz();
  if (name_or_path == "horseshoe") return horseshoe();
  if (name_or_path == "universal-v" || name_or_path == "universal_v" || name_or_path == "V") return universal_v();
  std::ifstream in(name_or_path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open template '" + name_or_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_template(buf.str());
}

}  // namespace knotflow
