#ifndef QMSIEVE_CLI_CLI_HPP
#define QMSIEVE_CLI_CLI_HPP

#include "qmsieve/field/field_spec.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qms {

/* Field grammar:
 *   Q | realquad:m | poly:c0,c1,...,cn | multiquad:m1,m2,... | quad:m
 *   relquad:<field>:d | relquad:<field>:d0,d1,...   (delta on the base basis)
 *   @path.json                                      (FieldSpec JSON)
 * An optional "k:" prefix is ignored. */
FieldSpec parse_field_spec(std::string const& s);

/* ram:t1,t2,... or ram:@t1,t2,... with t = p (first prime above p) or p.i. */
std::vector<std::pair<Int, std::size_t>> parse_ram_spec(std::string const& s);

/* p or p.i: the i-th prime above p in sorted order. */
std::pair<Int, std::size_t> parse_prime_spec(std::string const& s);

/* Content-addressed JSON store. Entries carry the tool version; entries of
 * another version are misses, unreadable entries are reported and ignored. */
class Cache {
  public:
    explicit Cache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {}
    /* QM_SIEVE_CACHE, else $XDG_CACHE_HOME/qmsieve, else $HOME/.cache/qmsieve. */
    static std::optional<std::filesystem::path> default_dir();

    std::optional<json> get(std::string const& kind, json const& key, std::ostream& warn) const;
    void put(std::string const& kind, json const& key, json const& payload) const;
    bool enabled() const { return dir_.has_value(); }
    std::string key_digest(std::string const& kind, json const& key) const;

  private:
    std::optional<std::filesystem::path> dir_;
};

/* Exit codes: 0 computed (any verdict), 1 internal error, 2 invalid input,
 * 3 resource bound exceeded. args excludes the program name. */
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

} // namespace qms

#endif
