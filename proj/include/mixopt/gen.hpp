#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "mixopt/ext_real.hpp"
#include "mixopt/instance.hpp"
#include "mixopt/rational.hpp"

namespace mixopt {

namespace gen_detail {

// Raw engine outputs reduced by modulo keep the stream identical across
// platforms; std::uniform_int_distribution would not.
inline std::uint64_t draw(std::mt19937_64& eng, std::uint64_t bound) {
  return eng() % bound;
}

}  // namespace gen_detail

/// Deterministic random instance: coordinates drawn from the grid
/// {k/8 : -16 <= k <= 16}, each independently replaced by infinity with
/// probability inf_fraction; every bound is a random atom's finite value in
/// that coordinate plus a nonnegative grid offset, which keeps most
/// generated instances consistent.
inline Instance generate_instance(std::size_t num_atoms, std::size_t J,
                                  std::uint64_t seed,
                                  const Rat& inf_fraction) {
  if (num_atoms == 0)
    throw std::invalid_argument("generate_instance: need at least one atom");
  if (inf_fraction < 0 || inf_fraction > 1)
    throw std::invalid_argument(
        "generate_instance: inf_fraction must lie in [0, 1]");

  std::mt19937_64 eng(seed);
  const Rat resolution(1 << 20);
  Instance instance;
  for (std::size_t i = 0; i < num_atoms; ++i) {
    Atom atom;
    for (std::size_t j = 0; j <= J; ++j) {
      const long k = static_cast<long>(gen_detail::draw(eng, 33)) - 16;
      const Rat roll(static_cast<long>(gen_detail::draw(eng, 1 << 20)));
      if (roll < inf_fraction * resolution)
        atom.w.push_back(ExtReal::infinity());
      else
        atom.w.push_back(ExtReal(Rat(k) / 8));
    }
    instance.atoms.push_back(std::move(atom));
  }
  for (std::size_t j = 1; j <= J; ++j) {
    const std::uint64_t pick = gen_detail::draw(eng, num_atoms);
    const Rat offset(static_cast<long>(gen_detail::draw(eng, 17)));
    std::vector<std::size_t> finite;
    for (std::size_t i = 0; i < num_atoms; ++i)
      if (instance.atoms[i].w[j].is_finite()) finite.push_back(i);
    Rat base(0);
    if (!finite.empty())
      base = instance.atoms[finite[pick % finite.size()]].w[j].value();
    instance.d.push_back(base + offset / 8);
  }
  instance.validate();
  return instance;
}

}  // namespace mixopt
