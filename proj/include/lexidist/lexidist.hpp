#pragma once

// Umbrella header: the whole toolkit in one include.

#include "lexidist/version.hpp"
#include "lexidist/errors.hpp"
#include "lexidist/utf8.hpp"
#include "lexidist/unicode.hpp"
#include "lexidist/normalize.hpp"
#include "lexidist/concept_list.hpp"
#include "lexidist/metrics.hpp"
#include "lexidist/wordlist.hpp"
#include "lexidist/comparison.hpp"
#include "lexidist/classify.hpp"
#include "lexidist/report.hpp"
