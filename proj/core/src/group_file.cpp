#include "raystab/group_file.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "raystab/errors.hpp"

namespace raystab {

namespace {

struct StateLine {
  std::size_t line;
  bool generator;
  std::string name;
  std::vector<unsigned> perm;
  std::vector<std::string> sections;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return s != "1";
}

}  // namespace

GeneratingSet parse_group(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  unsigned degree = 0;
  std::vector<StateLine> states;
  std::map<std::string, std::size_t> by_name;

  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream tokens(raw);
    std::string keyword;
    if (!(tokens >> keyword)) continue;

    if (keyword == "alphabet") {
      if (degree != 0) throw ParseError(line_no, "alphabet declared twice");
      if (!states.empty()) throw ParseError(line_no, "alphabet must come first");
      std::string value;
      if (!(tokens >> value) || value.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(line_no, "alphabet needs a positive integer");
      degree = static_cast<unsigned>(std::stoul(value));
      if (degree < 2 || degree > 255) throw ParseError(line_no, "alphabet size must be in 2..255");
      std::string extra;
      if (tokens >> extra) throw ParseError(line_no, "unexpected '" + extra + "'");
      continue;
    }
    if (keyword != "gen" && keyword != "state") throw ParseError(line_no, "unknown keyword '" + keyword + "'");
    if (degree == 0) throw ParseError(line_no, "alphabet must be declared first");

    StateLine st{line_no, keyword == "gen", {}, {}, {}};
    if (!(tokens >> st.name) || !is_identifier(st.name))
      throw ParseError(line_no, "expected an identifier after '" + keyword + "'");
    if (by_name.count(st.name)) throw ParseError(line_no, "duplicate name '" + st.name + "'");
    bool have_perm = false, have_sections = false;
    std::string field;
    while (tokens >> field) {
      auto eq = field.find('=');
      if (eq == std::string::npos) throw ParseError(line_no, "expected key=value, got '" + field + "'");
      std::string key = field.substr(0, eq);
      std::vector<std::string> items = split(field.substr(eq + 1), ',');
      if (items.size() != degree)
        throw ParseError(line_no, key + " needs " + std::to_string(degree) + " entries");
      if (key == "perm") {
        have_perm = true;
        std::vector<bool> used(degree, false);
        for (const auto& item : items) {
          if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError(line_no, "bad perm entry '" + item + "'");
          unsigned c = static_cast<unsigned>(std::stoul(item));
          if (c >= degree || used[c]) throw ParseError(line_no, "perm is not a permutation");
          used[c] = true;
          st.perm.push_back(c);
        }
      } else if (key == "sections") {
        have_sections = true;
        for (const auto& item : items) {
          if (item != "1" && !is_identifier(item)) throw ParseError(line_no, "bad section '" + item + "'");
          st.sections.push_back(item);
        }
      } else {
        throw ParseError(line_no, "unknown field '" + key + "'");
      }
    }
    if (!have_perm || !have_sections) throw ParseError(line_no, "both perm= and sections= are required");
    by_name[st.name] = states.size();
    states.push_back(std::move(st));
  }
  if (degree == 0) throw ParseError(line_no, "missing alphabet declaration");

  Machine m{degree, {}, {}};
  const StateId identity = static_cast<StateId>(states.size());
  for (const auto& st : states) {
    std::vector<Letter> perm(st.perm.begin(), st.perm.end());
    std::vector<StateId> succ;
    for (const auto& s : st.sections) {
      if (s == "1") {
        succ.push_back(identity);
        continue;
      }
      auto it = by_name.find(s);
      if (it == by_name.end()) throw ParseError(st.line, "unknown state '" + s + "'");
      succ.push_back(static_cast<StateId>(it->second));
    }
    m.add_state(std::move(perm), std::move(succ));
  }
  {
    std::vector<Letter> perm(degree);
    for (unsigned c = 0; c < degree; ++c) perm[c] = static_cast<Letter>(c);
    m.add_state(std::move(perm), std::vector<StateId>(degree, identity));
  }

  GeneratingSet gens(degree);
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i].generator) gens.add(states[i].name, Automorphism::from_machine(m, static_cast<StateId>(i)));
  if (gens.size() == 0) throw ParseError(line_no, "no generators declared");
  return gens;
}

GeneratingSet load_group(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read group file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_group(buf.str());
}

}  // namespace raystab
