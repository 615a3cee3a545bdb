#ifndef OPENMORSE_OPENMORSE_HPP
#define OPENMORSE_OPENMORSE_HPP

#include "chain_complex.hpp"
#include "complex.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "filtration.hpp"
#include "function.hpp"
#include "generate.hpp"
#include "induced.hpp"
#include "io.hpp"
#include "morse.hpp"
#include "simplex.hpp"
#include "snf.hpp"
#include "subdivision.hpp"

#endif
