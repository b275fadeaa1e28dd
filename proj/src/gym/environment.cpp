#include "evsim/gym/environment.hpp"

#include <cmath>
#include <string>

#include "evsim/kernel/ids.hpp"

namespace evsim::gym {

namespace {

void require_finite(const std::vector<double>& state) {
  for (double v : state)
    if (!std::isfinite(v)) throw StateError("environment produced a non-finite state entry");
}

}  // namespace

void Environment::seed(std::uint64_t n, std::uint64_t first_episode) {
  stream_seed_ = n;
  episode_index_ = first_episode;
}

std::vector<double> Environment::reset() {
  finish_kernel();
  done_ = false;
  current_episode_ = episode_index_++;
  kernel_seed_ = hash64(stream_seed_, current_episode_);
  kernel_ = std::make_unique<Kernel>(make_kernel_config(kernel_seed_));

  RunResult first = kernel_->run();
  if (first.status != RunStatus::Interrupted || !first.raw_state) {
    finish_kernel();
    throw StateError("simulation ended before the first interruption");
  }
  last_raw_ = std::move(*first.raw_state);
  begin_episode(last_raw_);
  last_info_.clear();
  describe(last_raw_, last_info_);

  auto state = state_of(last_raw_);
  require_finite(state);
  return state;
}

StepResult Environment::step(int action) {
  if (done_) throw UsageError("step() called after the episode finished; call reset()");
  if (kernel_ == nullptr) throw UsageError("step() called before reset()");
  if (action < 0 || action >= action_count())
    throw UsageError("action " + std::to_string(action) + " outside the action space of size " +
                     std::to_string(action_count()));

  RunResult result = kernel_->run(translate_action(action, last_raw_));
  // A Done run still reports the gym agent's latest raw state.
  RawState current = result.raw_state ? std::move(*result.raw_state) : last_raw_;

  StepResult out;
  out.reward = step_reward(last_raw_, current);
  out.done = result.status == RunStatus::Done || episode_done(current);
  if (out.done) out.reward += final_update(current);
  out.state = state_of(current);
  require_finite(out.state);
  describe(current, out.info);

  last_raw_ = std::move(current);
  last_info_ = out.info;
  if (out.done) {
    done_ = true;
    finish_kernel();
  }
  return out;
}

void Environment::finish_kernel() {
  if (kernel_ == nullptr) return;
  if (!kernel_->terminated()) last_run_log_ = kernel_->terminate();
  kernel_.reset();
}

}  // namespace evsim::gym
