/** Revision upload: one in-flight submission at a time. */
import type { RevisionResponse } from './types.js';

export class UploadPanel {
    private input: HTMLInputElement;
    private button: HTMLButtonElement;
    private report: HTMLElement;
    private busy = false;

    onSubmit: (csvText: string) => Promise<void> = async () => undefined;

    constructor(root: HTMLElement) {
        root.innerHTML = `
            <input type="file" accept=".csv,text/csv">
            <button type="button" disabled>Upload revision</button>
            <div class="report"></div>`;
        this.input = root.querySelector('input')!;
        this.button = root.querySelector('button')!;
        this.report = root.querySelector('.report')!;
        this.input.addEventListener('change', () => {
            this.button.disabled = this.busy || !this.input.files?.length;
        });
        this.button.addEventListener('click', () => {
            void this.submitSelected();
        });
    }

    private async submitSelected(): Promise<void> {
        const file = this.input.files?.[0];
        if (!file || this.busy) {
            return;
        }
        const text = await file.text();
        await this.submitText(text);
    }

    /** Exposed for tests and for drag-and-drop wiring. */
    async submitText(text: string): Promise<void> {
        if (this.busy) {
            return;
        }
        this.busy = true;
        this.button.disabled = true;
        try {
            await this.onSubmit(text);
        } finally {
            this.busy = false;
            this.button.disabled = !this.input.files?.length;
        }
    }

    showOutcome(response: RevisionResponse): void {
        if (!response.accepted) {
            const items = response.errors.map((e) => `<li>${e}</li>`).join('');
            this.report.innerHTML = `
                <div class="rejected">
                    <strong>Revision rejected</strong> (still at revision ${response.revision})
                    <ul>${items}</ul>
                </div>`;
            return;
        }
        const diff = response.diff;
        const parts: string[] = [];
        if (diff) {
            if (diff.added.length) parts.push(`added: ${diff.added.join(', ')}`);
            if (diff.removed.length) parts.push(`removed: ${diff.removed.join(', ')}`);
            for (const change of diff.changed) {
                parts.push(
                    `${change.activity_id}.${change.field}: ${JSON.stringify(change.old)} → ${JSON.stringify(change.new)}`,
                );
            }
            if (diff.retimed.length) parts.push(`retimed: ${diff.retimed.join(', ')}`);
        }
        const summary = parts.length
            ? `<ul>${parts.map((p) => `<li>${p}</li>`).join('')}</ul>`
            : '<p>no changes</p>';
        const gaps = response.linkage?.unlinked_activities ?? [];
        const warning = gaps.length
            ? `<p class="warn">activities without geometry: ${gaps.join(', ')}</p>`
            : '';
        this.report.innerHTML = `
            <div class="accepted">
                <strong>Revision ${response.revision} accepted</strong>
                ${summary}${warning}
            </div>`;
    }

    showTransportError(message: string): void {
        this.report.innerHTML = `<div class="rejected"><strong>Upload failed:</strong> ${message}</div>`;
    }

    reportText(): string {
        return this.report.textContent ?? '';
    }
}
