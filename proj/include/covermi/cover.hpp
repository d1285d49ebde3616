#ifndef COVERMI_COVER_HPP
#define COVERMI_COVER_HPP

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace covermi {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A cover: a binary relation between nodes and modules where a node may
// belong to several modules. Immutable after construction; safe for
// concurrent reads.
class Cover {
public:
  // Reads the TSV membership format: one `node<TAB>module` per line,
  // `#` comments and blank lines ignored, duplicate lines idempotent.
  // Internal dense indices follow first appearance in the stream.
  static Cover parse(std::istream& in);
  static Cover parse_file(const std::string& path);

  std::size_t node_count() const { return node_names_.size(); }
  std::size_t module_count() const { return module_names_.size(); }

  const std::string& node_name(int i) const { return node_names_[i]; }
  const std::string& module_name(int i) const { return module_names_[i]; }

  // -1 when the name is unknown.
  int node_index(const std::string& name) const;

  // Sorted dense module indices of a node.
  const std::vector<int>& modules_of(int node) const {
    return node_modules_[node];
  }
  // Sorted dense node indices of a module.
  const std::vector<int>& nodes_of(int module) const {
    return module_nodes_[module];
  }

  bool is_partition() const;

  // Maximal groups (size >= 2) of modules with identical node sets.
  // An empty result means disambiguation always yields a single module.
  std::vector<std::vector<int>> duplicate_module_groups() const;

  // Throws ValidationError naming the duplicate groups, if any.
  void validate_unique_modules() const;

  // Merges each duplicate group into the module with the
  // lexicographically smallest name.
  Cover merged_duplicates() const;

  void serialize(std::ostream& out) const;

private:
  Cover() = default;
  void add_membership(const std::string& node, const std::string& module);
  void finalize();

  std::vector<std::string> node_names_;
  std::vector<std::string> module_names_;
  std::unordered_map<std::string, int> node_index_;
  std::unordered_map<std::string, int> module_index_;
  std::vector<std::vector<int>> node_modules_;
  std::vector<std::vector<int>> module_nodes_;
};

// Shared node order for two covers over the same node set: entry i is the
// index in `b` of node i of `a`. Throws DomainMismatchError listing up to
// 10 offending nodes from each side.
std::vector<int> common_domain(const Cover& a, const Cover& b);

}  // namespace covermi

#endif
