#pragma once

#include "abext/errors.hpp"
#include "abext/int_matrix.hpp"
#include "abext/normal_form.hpp"
#include "abext/group.hpp"
#include "abext/congruence.hpp"
#include "abext/hom.hpp"
#include "abext/hom_group.hpp"
#include "abext/ses.hpp"
#include "abext/pull_push.hpp"
#include "abext/ext.hpp"
#include "abext/six_term.hpp"
#include "abext/fibre_sequence.hpp"
#include "abext/splice.hpp"
#include "abext/workspace.hpp"
