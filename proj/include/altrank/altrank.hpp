#ifndef ALTRANK_ALTRANK_HPP
#define ALTRANK_ALTRANK_HPP

#define ALTRANK_VERSION "0.1.0"

#include "altrank/analyze.hpp"
#include "altrank/families.hpp"
#include "altrank/field.hpp"
#include "altrank/matrix.hpp"
#include "altrank/optimal_search.hpp"
#include "altrank/parallel.hpp"
#include "altrank/reduce.hpp"
#include "altrank/space.hpp"
#include "altrank/symplectic.hpp"

#endif // ALTRANK_ALTRANK_HPP
