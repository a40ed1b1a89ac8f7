#pragma once

#include <qes/closed_forms.hpp>
#include <qes/diffkit.hpp>
#include <qes/errors.hpp>
#include <qes/grid.hpp>
#include <qes/params.hpp>
#include <qes/pct.hpp>
#include <qes/quadrature.hpp>
#include <qes/so21.hpp>
#include <qes/tcs.hpp>
#include <qes/verify.hpp>
#include <qes/version.hpp>
