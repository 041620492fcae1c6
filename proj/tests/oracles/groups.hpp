#pragma once

// Set-theoretic group computations on raw permutations. Deliberately share
// nothing with the library beyond the Perm type.

#include <set>
#include <vector>

#include "mackeylab/group.hpp"

namespace oracle {

using mackeylab::Perm;
using PermSet = std::set<Perm>;

Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& a);
PermSet closure(std::size_t degree, const std::vector<Perm>& gens);
/// Every subgroup generated by at most two elements.
std::vector<PermSet> two_generated_subgroups(const PermSet& group);
std::size_t conjugacy_class_count(const PermSet& group, const std::vector<PermSet>& subgroups);
PermSet normalizer(const PermSet& group, const PermSet& h);
/// Sizes of the double cosets A x B inside K, sorted.
std::vector<std::size_t> double_coset_sizes(const PermSet& a, const PermSet& k, const PermSet& b);
PermSet group_of(const mackeylab::FiniteGroup& g);
PermSet subgroup_perms(const mackeylab::FiniteGroup& g, mackeylab::SubId h);

}  // namespace oracle
