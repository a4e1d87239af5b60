#pragma once

#include "bargmann/chain_spec.hpp"
#include "bargmann/diagnostics.hpp"
#include "bargmann/dsl.hpp"
#include "bargmann/jordan_schwinger.hpp"
#include "bargmann/multi_index.hpp"
#include "bargmann/operator.hpp"
#include "bargmann/oracle.hpp"
#include "bargmann/oscillator.hpp"
#include "bargmann/rational.hpp"
#include "bargmann/spectra.hpp"
#include "bargmann/spin_chain.hpp"
#include "bargmann/state.hpp"
