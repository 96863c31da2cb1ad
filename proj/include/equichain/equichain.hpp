#pragma once

#include "equichain/abelian.hpp"
#include "equichain/complex.hpp"
#include "equichain/error.hpp"
#include "equichain/functors.hpp"
#include "equichain/group.hpp"
#include "equichain/homology.hpp"
#include "equichain/hyper.hpp"
#include "equichain/integer.hpp"
#include "equichain/io.hpp"
#include "equichain/les.hpp"
#include "equichain/matrix.hpp"
#include "equichain/modp.hpp"
#include "equichain/report.hpp"
#include "equichain/simplicial.hpp"
#include "equichain/smith.hpp"
#include "equichain/spaces.hpp"
#include "equichain/theorems.hpp"
