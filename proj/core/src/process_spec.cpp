#include "mixbound/process_spec.hpp"

namespace mixbound {

std::size_t process_length(const ProcessSpec& spec) {
  return std::visit([](const auto& s) { return s.length(); }, spec);
}

const Alphabet& process_alphabet(const ProcessSpec& spec) {
  struct Visitor {
    const Alphabet& operator()(const ChainSpec& s) const { return s.alphabet(); }
    const Alphabet& operator()(const UndirectedChainSpec& s) const { return s.alphabet(); }
    const Alphabet& operator()(const TreeSpec& s) const { return s.alphabet(); }
    const Alphabet& operator()(const MmpSpec& s) const { return s.obs_alphabet(); }
  };
  return std::visit(Visitor{}, spec);
}

double process_density(const ProcessSpec& spec, std::span<const Sym> x) {
  struct Visitor {
    std::span<const Sym> x;
    double operator()(const ChainSpec& s) const { return chain_density(s, x); }
    double operator()(const UndirectedChainSpec& s) const { return field_density(s, x); }
    double operator()(const TreeSpec& s) const { return tree_density(s, x); }
    double operator()(const MmpSpec& s) const { return mmp_density(s, x); }
  };
  return std::visit(Visitor{x}, spec);
}

}  // namespace mixbound
