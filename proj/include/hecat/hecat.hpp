#pragma once

#include "hecat/bigraded.hpp"
#include "hecat/complexes.hpp"
#include "hecat/coxeter.hpp"
#include "hecat/errors.hpp"
#include "hecat/hecke.hpp"
#include "hecat/homology.hpp"
#include "hecat/laurent.hpp"
#include "hecat/linalg.hpp"
#include "hecat/mixed_point.hpp"
#include "hecat/polynomial.hpp"
#include "hecat/rational.hpp"
#include "hecat/sampling.hpp"
#include "hecat/soergel.hpp"
#include "hecat/suites.hpp"
