#pragma once

#include "bounds.hpp"
#include "correction.hpp"
#include "errors.hpp"
#include "instance_gen.hpp"
#include "lemma_suites.hpp"
#include "measure_space.hpp"
#include "operator.hpp"
#include "rng.hpp"
#include "scalar.hpp"
#include "scalar_lemmas.hpp"
