#include "covermi/cover.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace covermi {

void Cover::add_membership(const std::string& node,
                           const std::string& module) {
  auto [nit, node_new] = node_index_.try_emplace(
      node, static_cast<int>(node_names_.size()));
  if (node_new) {
    node_names_.push_back(node);
    node_modules_.emplace_back();
  }
  auto [mit, module_new] = module_index_.try_emplace(
      module, static_cast<int>(module_names_.size()));
  if (module_new) {
    module_names_.push_back(module);
    module_nodes_.emplace_back();
  }
  int n = nit->second;
  int m = mit->second;
  auto& mods = node_modules_[n];
  if (std::find(mods.begin(), mods.end(), m) == mods.end()) {
    mods.push_back(m);
    module_nodes_[m].push_back(n);
  }
}

void Cover::finalize() {
  for (auto& mods : node_modules_) std::sort(mods.begin(), mods.end());
  for (auto& nodes : module_nodes_) std::sort(nodes.begin(), nodes.end());
}

Cover Cover::parse(std::istream& in) {
  Cover cover;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected exactly two tab-separated fields");
    }
    cover.add_membership(line.substr(0, tab), line.substr(tab + 1));
  }
  if (cover.node_names_.empty()) throw ParseError("empty cover");
  cover.finalize();
  return cover;
}

Cover Cover::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return parse(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

int Cover::node_index(const std::string& name) const {
  auto it = node_index_.find(name);
  return it == node_index_.end() ? -1 : it->second;
}

bool Cover::is_partition() const {
  for (const auto& mods : node_modules_)
    if (mods.size() != 1) return false;
  return true;
}

std::vector<std::vector<int>> Cover::duplicate_module_groups() const {
  // Group modules by node set; sorted vectors compare as sets.
  std::map<std::vector<int>, std::vector<int>> by_nodes;
  for (int m = 0; m < static_cast<int>(module_count()); ++m)
    by_nodes[module_nodes_[m]].push_back(m);
  std::vector<std::vector<int>> groups;
  for (auto& [nodes, mods] : by_nodes)
    if (mods.size() >= 2) groups.push_back(std::move(mods));
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return groups;
}

void Cover::validate_unique_modules() const {
  auto groups = duplicate_module_groups();
  if (groups.empty()) return;
  std::ostringstream msg;
  msg << "duplicate modules (identical node sets):";
  for (const auto& group : groups) {
    msg << " {";
    for (std::size_t i = 0; i < group.size(); ++i)
      msg << (i ? ", " : "") << module_names_[group[i]];
    msg << "}";
  }
  throw ValidationError(msg.str());
}

Cover Cover::merged_duplicates() const {
  std::vector<int> keep(module_count());
  for (std::size_t m = 0; m < module_count(); ++m) keep[m] = static_cast<int>(m);
  for (const auto& group : duplicate_module_groups()) {
    int best = group.front();
    for (int m : group)
      if (module_names_[m] < module_names_[best]) best = m;
    for (int m : group) keep[m] = best;
  }
  Cover cover;
  for (std::size_t n = 0; n < node_count(); ++n) {
    std::set<int> merged;
    for (int m : node_modules_[n]) merged.insert(keep[m]);
    for (int m : merged) cover.add_membership(node_names_[n], module_names_[m]);
  }
  cover.finalize();
  return cover;
}

void Cover::serialize(std::ostream& out) const {
  for (std::size_t n = 0; n < node_count(); ++n)
    for (int m : node_modules_[n])
      out << node_names_[n] << '\t' << module_names_[m] << '\n';
}

std::vector<int> common_domain(const Cover& a, const Cover& b) {
  std::vector<std::string> only_a, only_b;
  std::vector<int> mapping(a.node_count(), -1);
  for (std::size_t n = 0; n < a.node_count(); ++n) {
    int idx = b.node_index(a.node_name(n));
    if (idx < 0) {
      if (only_a.size() < 10) only_a.push_back(a.node_name(n));
    } else {
      mapping[n] = idx;
    }
  }
  if (b.node_count() > a.node_count() || !only_a.empty()) {
    for (std::size_t n = 0; n < b.node_count() && only_b.size() < 10; ++n)
      if (a.node_index(b.node_name(n)) < 0) only_b.push_back(b.node_name(n));
  }
  if (!only_a.empty() || !only_b.empty()) {
    std::ostringstream msg;
    msg << "covers are not over the same node set;";
    if (!only_a.empty()) {
      msg << " only in first:";
      for (const auto& name : only_a) msg << ' ' << name;
    }
    if (!only_b.empty()) {
      msg << " only in second:";
      for (const auto& name : only_b) msg << ' ' << name;
    }
    throw DomainMismatchError(msg.str());
  }
  return mapping;
}

}  // namespace covermi
