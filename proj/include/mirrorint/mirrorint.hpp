#pragma once

#include "catalog.hpp"
#include "dwork.hpp"
#include "forms.hpp"
#include "json_io.hpp"
#include "landau.hpp"
#include "mirror.hpp"
#include "operators.hpp"
#include "series.hpp"
