/**
 * Fixed-interval poll loop that never overlaps ticks: a slow response
 * simply delays the next poll instead of stacking requests.
 */

export class Poller {
  private readonly tick: () => Promise<void>;
  private readonly intervalMs: number;
  private timer: ReturnType<typeof setInterval> | null = null;
  private inFlight = false;

  constructor(tick: () => Promise<void>, intervalMs = 1000) {
    this.tick = tick;
    this.intervalMs = intervalMs;
  }

  start(): void {
    if (this.timer !== null) {
      return;
    }
    this.timer = setInterval(() => {
      void this.fire();
    }, this.intervalMs);
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  get running(): boolean {
    return this.timer !== null;
  }

  async fire(): Promise<void> {
    if (this.inFlight) {
      return;
    }
    this.inFlight = true;
    try {
      await this.tick();
    } finally {
      this.inFlight = false;
    }
  }
}
