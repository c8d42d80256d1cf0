#pragma once

#include "linform/cache.hpp"
#include "linform/engine.hpp"
#include "linform/error.hpp"
#include "linform/explorer.hpp"
#include "linform/forms.hpp"
#include "linform/json_io.hpp"
#include "linform/sets.hpp"
#include "linform/theory.hpp"
