namespace surfstab {}
