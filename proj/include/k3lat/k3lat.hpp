#pragma once

#include "k3lat/arith.hpp"
#include "k3lat/bm.hpp"
#include "k3lat/discform.hpp"
#include "k3lat/error.hpp"
#include "k3lat/extmukai.hpp"
#include "k3lat/glue.hpp"
#include "k3lat/io.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/matrix.hpp"
#include "k3lat/mukai.hpp"
#include "k3lat/normal_form.hpp"
