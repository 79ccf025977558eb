#pragma once

// Umbrella header for the whole engine.

#include "chowdr/abelian.hpp"
#include "chowdr/dr.hpp"
#include "chowdr/errors.hpp"
#include "chowdr/expr.hpp"
#include "chowdr/geometry.hpp"
#include "chowdr/model_file.hpp"
#include "chowdr/models.hpp"
#include "chowdr/morphism.hpp"
#include "chowdr/rational.hpp"
#include "chowdr/registry.hpp"
#include "chowdr/ring.hpp"
#include "chowdr/verify.hpp"
