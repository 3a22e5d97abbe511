/** Date slider with one-day-per-tick playback. */

export function addDays(iso: string, days: number): string {
    const date = new Date(`${iso}T00:00:00Z`);
    date.setUTCDate(date.getUTCDate() + days);
    return date.toISOString().slice(0, 10);
}

export function dayOffset(start: string, date: string): number {
    const ms = Date.parse(`${date}T00:00:00Z`) - Date.parse(`${start}T00:00:00Z`);
    return Math.round(ms / 86_400_000);
}

export class Timeline {
    private start = '';
    private days = 0;
    private slider: HTMLInputElement;
    private label: HTMLElement;
    private playButton: HTMLButtonElement;
    private timer: ReturnType<typeof setInterval> | null = null;

    onScrub: (date: string) => void = () => undefined;

    constructor(root: HTMLElement, private readonly tickMs = 600) {
        root.innerHTML = `
            <button class="play" type="button">&#9654;</button>
            <input type="range" min="0" max="0" value="0" step="1">
            <span class="date-label"></span>`;
        this.slider = root.querySelector('input')!;
        this.label = root.querySelector('.date-label')!;
        this.playButton = root.querySelector('button')!;
        this.slider.addEventListener('input', () => {
            this.stop();
            this.emit();
        });
        this.playButton.addEventListener('click', () => {
            if (this.timer) {
                this.stop();
            } else {
                this.play();
            }
        });
    }

    setRange(start: string, days: number): void {
        this.start = start;
        this.days = days;
        this.slider.max = String(days);
    }

    setDate(date: string): void {
        // clamp into the project range
        const offset = Math.min(Math.max(dayOffset(this.start, date), 0), this.days);
        this.slider.value = String(offset);
        this.label.textContent = this.current();
    }

    current(): string {
        return addDays(this.start, Number(this.slider.value));
    }

    play(): void {
        this.playButton.classList.add('playing');
        this.timer = setInterval(() => {
            const next = Number(this.slider.value) + 1;
            if (next > this.days) {
                this.stop();
                return;
            }
            this.slider.value = String(next);
            this.emit();
        }, this.tickMs);
    }

    stop(): void {
        this.playButton.classList.remove('playing');
        if (this.timer) {
            clearInterval(this.timer);
            this.timer = null;
        }
    }

    private emit(): void {
        this.label.textContent = this.current();
        this.onScrub(this.current());
    }
}
