#pragma once

#include "fieldtrends/cli.hpp"
#include "fieldtrends/corpus.hpp"
#include "fieldtrends/errors.hpp"
#include "fieldtrends/jsonio.hpp"
#include "fieldtrends/laws.hpp"
#include "fieldtrends/metrics.hpp"
#include "fieldtrends/regress.hpp"
#include "fieldtrends/report.hpp"
#include "fieldtrends/rng.hpp"
#include "fieldtrends/stats.hpp"
#include "fieldtrends/svg.hpp"
#include "fieldtrends/synth.hpp"
#include "fieldtrends/version.hpp"
