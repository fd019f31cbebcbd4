#pragma once

#include <coroutine>
#include <exception>
#include <optional>
#include <utility>

namespace lzdawg::detail {

/// Lazily started coroutine returning T. Awaiting a Task runs it to
/// completion, transferring back to the awaiter symmetrically; a leaf awaiter
/// that suspends hands control back to whoever last resumed the chain.
template <class T>
class Task {
public:
    struct promise_type {
        std::optional<T> value;
        std::coroutine_handle<> continuation;
        std::exception_ptr error;

        Task get_return_object() { return Task{std::coroutine_handle<promise_type>::from_promise(*this)}; }
        std::suspend_always initial_suspend() noexcept { return {}; }

        struct FinalAwaiter {
            bool await_ready() noexcept { return false; }
            std::coroutine_handle<> await_suspend(std::coroutine_handle<promise_type> h) noexcept {
                auto c = h.promise().continuation;
                return c ? c : std::noop_coroutine();
            }
            void await_resume() noexcept {}
        };
        FinalAwaiter final_suspend() noexcept { return {}; }

        template <class U>
        void return_value(U&& v) {
            value.emplace(std::forward<U>(v));
        }
        void unhandled_exception() { error = std::current_exception(); }
    };

    Task() = default;
    explicit Task(std::coroutine_handle<promise_type> h) : h_(h) {}
    Task(Task&& o) noexcept : h_(std::exchange(o.h_, {})) {}
    Task& operator=(Task&& o) noexcept {
        if (this != &o) {
            if (h_) h_.destroy();
            h_ = std::exchange(o.h_, {});
        }
        return *this;
    }
    Task(const Task&) = delete;
    Task& operator=(const Task&) = delete;
    ~Task() {
        if (h_) h_.destroy();
    }

    bool await_ready() const noexcept { return false; }
    std::coroutine_handle<> await_suspend(std::coroutine_handle<> caller) noexcept {
        h_.promise().continuation = caller;
        return h_;
    }
    T await_resume() {
        if (h_.promise().error) std::rethrow_exception(h_.promise().error);
        return std::move(*h_.promise().value);
    }

    /// Root-level control.
    void start() { h_.resume(); }
    bool done() const { return !h_ || h_.done(); }
    void rethrow_if_failed() const {
        if (h_ && h_.promise().error) std::rethrow_exception(h_.promise().error);
    }

private:
    std::coroutine_handle<promise_type> h_;
};

struct Unit {};

/// Suspends the current chain until `input_ready(needed)` holds; `park`
/// records the handle and the amount it waits for.
template <class Owner>
struct InputGate {
    Owner* owner;
    std::uint64_t needed;

    bool await_ready() const { return owner->input_ready(needed); }
    void await_suspend(std::coroutine_handle<> h) { owner->park(h, needed); }
    bool await_resume() const { return owner->input_available(needed); }
};

}  // namespace lzdawg::detail
