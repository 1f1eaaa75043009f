#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace equifuse
{

using IntVector = std::vector<std::int64_t>;

struct AxiomFailure
{
  std::string axiom;
  std::vector<std::size_t> subgroups; ///< lattice indices involved
  std::string witness;                ///< human-readable input description
  IntVector lhs;
  IntVector rhs;
};

struct AxiomTally
{
  std::string id;
  std::size_t checked = 0;
  std::size_t failed = 0;
};

/// Outcome of an exhaustive axiom check. Tallies appear in a fixed order; at
/// most `max_witnesses` failures are kept in full.
class AxiomReport
{
public:
  static constexpr std::size_t max_witnesses = 64;

  explicit AxiomReport(std::vector<std::string> ids = {})
  {
    for (auto &id : ids)
      tallies_.push_back(AxiomTally{std::move(id)});
  }

  AxiomTally &tally(const std::string &id)
  {
    for (auto &t : tallies_)
      if (t.id == id)
        return t;
    tallies_.push_back(AxiomTally{id});
    return tallies_.back();
  }

  /// Counts one check; records a witness on failure.
  bool record(const std::string &id, bool ok, const std::vector<std::size_t> &subgroups,
              const std::string &witness, const IntVector &lhs = {}, const IntVector &rhs = {})
  {
    auto &t = tally(id);
    ++t.checked;
    if (!ok) {
      ++t.failed;
      if (witnesses_.size() < max_witnesses)
        witnesses_.push_back(AxiomFailure{id, subgroups, witness, lhs, rhs});
    }
    return ok;
  }

  void merge(const AxiomReport &other)
  {
    for (const auto &t : other.tallies_) {
      auto &mine = tally(t.id);
      mine.checked += t.checked;
      mine.failed += t.failed;
    }
    for (const auto &w : other.witnesses_)
      if (witnesses_.size() < max_witnesses)
        witnesses_.push_back(w);
  }

  const std::vector<AxiomTally> &tallies() const noexcept
  { return tallies_; }

  const std::vector<AxiomFailure> &witnesses() const noexcept
  { return witnesses_; }

  std::size_t failures() const noexcept
  {
    std::size_t n = 0;
    for (const auto &t : tallies_)
      n += t.failed;
    return n;
  }

  std::size_t checks() const noexcept
  {
    std::size_t n = 0;
    for (const auto &t : tallies_)
      n += t.checked;
    return n;
  }

  bool ok() const noexcept
  { return failures() == 0; }

  const AxiomTally *find(const std::string &id) const
  {
    for (const auto &t : tallies_)
      if (t.id == id)
        return &t;
    return nullptr;
  }

private:
  std::vector<AxiomTally> tallies_;
  std::vector<AxiomFailure> witnesses_;
};

} // namespace equifuse
