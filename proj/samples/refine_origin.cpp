// Refine the two-cell partition {origin, rest} of omega^2 and print the
// cells of the result together with both tuned checks.

#include <iostream>

#include "omegan/omegan.hpp"

int main() {
  using namespace omegan;
  const Region origin = Region::point(Point{0, 0});
  const Partition p = make_partition(Region::full(2), {origin, complement(origin)});

  const Refinement r = refine_monotone(p);
  std::cout << "k0 = " << r.trace.k0 << ", " << r.partition.size() << " cells\n";
  for (const auto& cell : r.partition.cells()) std::cout << "  " << to_string(cell) << "\n";
  std::cout << "tuned (le): " << is_tuned(r.partition, OrderKind::Reflexive).tuned() << "\n";
  std::cout << "tuned (lt): " << is_tuned(r.partition, OrderKind::Strict).tuned() << "\n";
  std::cout << "monotone:   " << is_monotone(r.partition).monotone() << "\n";
}
